//! Self-delimiting signed integers: zig-zag sign folding, then base-128
//! little-endian groups with a continuation bit (LEB128).

use crate::error::{LatticeError, Result};

pub fn zigzag(n: i64) -> u64 {
    ((n << 1) ^ (n >> 63)) as u64
}

pub fn unzigzag(z: u64) -> i64 {
    ((z >> 1) as i64) ^ -((z & 1) as i64)
}

pub fn encode_varint(n: i64) -> Vec<u8> {
    let mut z = zigzag(n);
    let mut out = Vec::with_capacity(10);
    loop {
        let byte = (z & 0x7f) as u8;
        z >>= 7;
        if z == 0 {
            out.push(byte);
            return out;
        }
        out.push(byte | 0x80);
    }
}

/// Decoded value and the number of bytes consumed.
pub fn decode_varint(bytes: &[u8]) -> Result<(i64, usize)> {
    let mut z: u64 = 0;
    for (i, &byte) in bytes.iter().enumerate().take(10) {
        let chunk = (byte & 0x7f) as u64;
        if i == 9 && chunk > 1 {
            return Err(LatticeError::Parse("varint overflows 64 bits".into()));
        }
        z |= chunk << (7 * i);
        if byte & 0x80 == 0 {
            return Ok((unzigzag(z), i + 1));
        }
    }
    Err(LatticeError::Parse("truncated varint".into()))
}

/// Encoded length in bits; always a multiple of 8.
pub fn varint_bits(n: i64) -> u64 {
    let significant = 64 - zigzag(n).leading_zeros() as u64;
    8 * significant.div_ceil(7).max(1)
}
