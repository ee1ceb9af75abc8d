//! Gödel coding of formulas.
//!
//! The code of a formula is a natural number whose residue mod 5 is a tag:
//!
//! | formula       | code                 |
//! |---------------|----------------------|
//! | `Atom(i)`     | `5i`                 |
//! | `Bot`         | `1`                  |
//! | `Impl(a, b)`  | `5·⟨#a, #b⟩ + 2`     |
//! | `And(a, b)`   | `5·⟨#a, #b⟩ + 3`     |
//! | `Or(a, b)`    | `5·⟨#a, #b⟩ + 4`     |
//!
//! where `⟨x, y⟩ = (x + y)(x + y + 1)/2 + y` is the Cantor pairing function.
//! Encoding is injective and total. Decoding is partial: every `5k + 1` with
//! `k ≥ 1` is a gap, and so is any composite code with a gap as a component,
//! and any atom index beyond `u64::MAX`. Codes grow quickly with depth, so they
//! are arbitrary precision.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::Formula;

/// Cantor pairing `⟨x, y⟩ = (x + y)(x + y + 1)/2 + y`.
pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

/// Inverse of [`pair`].
pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

fn pair_tag(a: &Formula, b: &Formula, tag: u32) -> BigUint {
    pair(&encode(a), &encode(b)) * 5u32 + tag
}

pub fn encode(p: &Formula) -> BigUint {
    match p {
        Formula::Atom(i) => BigUint::from(*i) * 5u32,
        Formula::Bot => BigUint::from(1u32),
        Formula::Impl(a, b) => pair_tag(a, b, 2),
        Formula::And(a, b) => pair_tag(a, b, 3),
        Formula::Or(a, b) => pair_tag(a, b, 4),
    }
}

pub fn decode(n: &BigUint) -> Option<Formula> {
    if let Some(small) = n.to_u64() {
        return decode_u64(small);
    }
    let tag = (n % 5u32).to_u32().expect("residue mod 5");
    let k = n / 5u32;
    match tag {
        0 => k.to_u64().map(Formula::Atom),
        1 => k.is_zero().then_some(Formula::Bot),
        _ => {
            let (x, y) = unpair(&k);
            let (a, b) = (decode(&x)?, decode(&y)?);
            Some(compose(tag, a, b))
        }
    }
}

fn compose(tag: u32, a: Formula, b: Formula) -> Formula {
    match tag {
        2 => Formula::implies(a, b),
        3 => Formula::and(a, b),
        _ => Formula::or(a, b),
    }
}

fn unpair_u64(z: u64) -> (u64, u64) {
    let z = u128::from(z);
    let w = ((8 * z + 1).isqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = z - t;
    let x = w - y;
    (x as u64, y as u64)
}

/// [`decode`] specialised to codes that fit in a machine word.
pub fn decode_u64(n: u64) -> Option<Formula> {
    let tag = (n % 5) as u32;
    let k = n / 5;
    match tag {
        0 => Some(Formula::Atom(k)),
        1 => (k == 0).then_some(Formula::Bot),
        _ => {
            let (x, y) = unpair_u64(k);
            let (a, b) = (decode_u64(x)?, decode_u64(y)?);
            Some(compose(tag, a, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn code(s: &str) -> u64 {
        encode(&parse(s).unwrap()).to_u64().unwrap()
    }

    // Golden values computed by hand from the table in the module docs.
    #[test]
    fn golden_codes() {
        assert_eq!(code("p0"), 0);
        assert_eq!(code("false"), 1);
        assert_eq!(code("p1"), 5);
        assert_eq!(code("p0 -> p0"), 2); // 5·⟨0,0⟩ + 2
        assert_eq!(code("p0 & p0"), 3);
        assert_eq!(code("p0 | p0"), 4);
        assert_eq!(code("~p0"), 12); // 5·⟨0,1⟩ + 2, ⟨0,1⟩ = 2
        assert_eq!(code("p1 | p2"), 654); // ⟨5,10⟩ = 120 + 10 = 130
        assert_eq!(code("p0 | p1"), 104); // ⟨0,5⟩ = 15 + 5 = 20
    }

    #[test]
    fn gaps_decode_to_none() {
        assert_eq!(decode_u64(6), None);
        assert_eq!(decode_u64(11), None);
        assert_eq!(decode_u64(1), Some(Formula::Bot));
    }

    #[test]
    fn pairing_roundtrip_small() {
        for z in 0u64..2000 {
            let (x, y) = unpair_u64(z);
            assert_eq!(pair(&x.into(), &y.into()), BigUint::from(z));
            assert_eq!(unpair(&BigUint::from(z)), (BigUint::from(x), BigUint::from(y)));
        }
    }

    #[test]
    fn big_codes_roundtrip() {
        let mut p = parse("p7 | ~p3").unwrap();
        for _ in 0..6 {
            p = Formula::implies(p.clone(), Formula::or(p, Formula::atom(2)));
        }
        let n = encode(&p);
        assert!(n.to_u64().is_none());
        assert_eq!(decode(&n), Some(p));
    }

    #[test]
    fn oversized_atom_index_is_a_gap() {
        let n = BigUint::from(u64::MAX) * 5u32 + 5u32;
        assert_eq!(decode(&n), None);
    }
}
