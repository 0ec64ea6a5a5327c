//! Integer column operations for rank-2 lattices: Hermite normal form of a
//! 2×n matrix of big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Upper-triangular column Hermite normal form `[[a, b], [0, d]]` with
/// `a, d > 0` and `0 <= b < a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Hnf2 {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
}

/// Reduce the column span of `cols` to HNF. Returns `None` when the span has
/// rank below 2.
pub(crate) fn column_hnf(cols: &[[BigInt; 2]]) -> Option<Hnf2> {
    let mut cols: Vec<[BigInt; 2]> = cols.to_vec();

    // Sweep the bottom row down to a single nonzero entry by gcd steps.
    loop {
        let mut nonzero: Vec<usize> = (0..cols.len())
            .filter(|&i| !cols[i][1].is_zero())
            .collect();
        if nonzero.len() <= 1 {
            break;
        }
        nonzero.sort_by_key(|&i| cols[i][1].abs());
        let pivot = nonzero[0];
        for &i in &nonzero[1..] {
            let q = cols[i][1].div_floor(&cols[pivot][1]);
            let new0 = &cols[i][0] - &q * &cols[pivot][0];
            let new1 = &cols[i][1] - &q * &cols[pivot][1];
            cols[i] = [new0, new1];
        }
        cols.retain(|c| !c[0].is_zero() || !c[1].is_zero());
    }

    let pivot = cols.iter().position(|c| !c[1].is_zero())?;
    let mut second = cols.remove(pivot);
    if second[1].is_negative() {
        second = [-&second[0], -&second[1]];
    }
    let d = second[1].clone();

    // Remaining columns lie on the top axis; their gcd is the first pivot.
    let mut a = BigInt::zero();
    for c in &cols {
        a = a.gcd(&c[0]);
    }
    if a.is_zero() {
        return None;
    }

    let b = second[0].mod_floor(&a);
    Some(Hnf2 { a, b, d })
}
