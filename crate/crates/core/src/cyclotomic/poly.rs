//! Integer cyclotomic polynomials and reduced power tables, cached per order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

/// Data describing the power basis of Q(zeta_N).
#[derive(Debug)]
pub struct FieldData {
    pub degree: usize,
    /// Monic minimal polynomial, coefficients from constant term upwards.
    pub modulus: Vec<i64>,
    /// `powers[j]` is zeta^j written in the power basis, for `0 <= j < order`.
    pub powers: Vec<Vec<BigInt>>,
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<FieldData>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

thread_local! {
    static LAST: std::cell::RefCell<Option<(u32, Arc<FieldData>)>> = const { std::cell::RefCell::new(None) };
}

pub fn field(order: u32) -> Arc<FieldData> {
    LAST.with(|last| {
        if let Some((o, f)) = &*last.borrow() {
            if *o == order {
                return f.clone();
            }
        }
        let f = shared_field(order);
        *last.borrow_mut() = Some((order, f.clone()));
        f
    })
}

fn shared_field(order: u32) -> Arc<FieldData> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(f) = FIELDS.lock().unwrap().get(&order) {
        return f.clone();
    }
    let data = Arc::new(build(order));
    // Write-once: a racing thread may have inserted an identical value first.
    FIELDS.lock().unwrap().entry(order).or_insert(data).clone()
}

fn build(order: u32) -> FieldData {
    let modulus = cyclotomic_polynomial(order);
    let degree = modulus.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![BigInt::zero(); degree];
    cur[0] = BigInt::one();
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce
        let mut next = vec![BigInt::zero(); degree];
        for i in 0..degree.saturating_sub(1) {
            next[i + 1] = cur[i].clone();
        }
        let top = cur[degree - 1].clone();
        if !top.is_zero() {
            for (i, c) in modulus.iter().take(degree).enumerate() {
                next[i] -= &top * c;
            }
        }
        cur = next;
    }
    FieldData { degree, modulus, powers }
}

/// Phi_n as integer coefficients (constant term first), via x^n - 1 = prod_{d | n} Phi_d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic_polynomial(d);
            num = exact_divide(&num, &phi);
        }
    }
    num
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quo = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(16), vec![1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(20).len() - 1, 8);
    }

    #[test]
    fn zeta_powers_wrap() {
        let f = field(16);
        // zeta^8 = -1
        let mut minus_one = vec![BigInt::zero(); 8];
        minus_one[0] = BigInt::from(-1);
        assert_eq!(f.powers[8], minus_one);
    }
}
