//! The finite quantum sl2 at a 4r-th root of unity, its irreducible modules,
//! the universal R-matrix and the elementary tangle operators.
//!
//! Everything lives in Q(zeta_4r). With `s = zeta_4r = exp(h/4)` and `q = s^2`:
//!
//! * `V^k` has basis `e_0, ..., e_{k-1}` of weights `w_j = k - 1 - 2j`, with
//!   `K e_j = s^(w_j) e_j`, `X e_j = [j] e_{j-1}`, `Y e_j = [k-1-j] e_{j+1}`.
//! * `Delta(X) = X (x) K + K^-1 (x) X`, likewise for `Y`, `Delta(K) = K (x) K`,
//!   antipode `S(X) = -K X K^-1`, `S(Y) = -K Y K^-1`, `S(K) = K^-1`.
//! * The dual `V^k*` acts on the dual basis by `S(u)^T`.
//! * `R = s^(H (x) H) * sum_{n<r} q^(n(n-1)/2) (q - q^-1)^n / [n]! (KX)^n (x) (YK^-1)^n`,
//!   where `s^(H (x) H)` is diagonal with entries `s^(w w')`.
//!
//! The printed formula for the universal element has a sum where a tensor
//! product belongs; the form above is the one checked by the Yang-Baxter and
//! quasi-triangularity suites.
//!
//! Cups and caps, for a strand of color k where downward strands carry `V^k`
//! and upward strands carry `V^k*`:
//!
//! * `E: V* (x) V -> C`, `f (x) x -> f(x)` (cap, left leg up)
//! * `E_check: V (x) V* -> C`, `x (x) f -> f(K^2 x)` (cap, left leg down)
//! * `N: C -> V (x) V*`, `1 -> sum e_i (x) e^i` (cup, left leg down)
//! * `N_check: C -> V* (x) V`, `1 -> sum e^i (x) K^-2 e_i` (cup, left leg up)

mod operator;

use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::error::InvariantError;
use crate::linalg::CycMatrix;

pub use operator::{signature_dim, Operator, StrandModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    X,
    Y,
    K,
    KInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CupCap {
    E,
    ECheck,
    N,
    NCheck,
}

/// Action matrices of `V^k` or its dual in the weight basis.
#[derive(Clone, Debug)]
pub struct IrrepModule {
    pub level: u32,
    pub color: u32,
    pub dual: bool,
    pub x: CycMatrix,
    pub y: CycMatrix,
    pub k: CycMatrix,
    pub k_inv: CycMatrix,
    /// Exponents of `s` on the diagonal of `K`.
    pub weights: Vec<i64>,
}

impl IrrepModule {
    pub fn dim(&self) -> usize {
        self.color as usize
    }

    pub fn strand(&self) -> StrandModule {
        StrandModule::new(self.color, self.dual)
    }

    pub fn action(&self, u: Gen) -> &CycMatrix {
        match u {
            Gen::X => &self.x,
            Gen::Y => &self.y,
            Gen::K => &self.k,
            Gen::KInv => &self.k_inv,
        }
    }
}

type BraidKey = (StrandModule, StrandModule, bool);

pub struct QuantumAlgebra {
    level: u32,
    order: u32,
    s: CycNum,
    modules: DashMap<StrandModule, Arc<IrrepModule>>,
    braidings: DashMap<BraidKey, Arc<CycMatrix>>,
}

static ALGEBRAS: Lazy<DashMap<u32, Arc<QuantumAlgebra>>> = Lazy::new(DashMap::new);

impl QuantumAlgebra {
    pub fn new(level: u32) -> Result<Self, InvariantError> {
        if level < 2 {
            return Err(InvariantError::BadLevel(level));
        }
        let order = 4 * level;
        Ok(QuantumAlgebra {
            level,
            order,
            s: CycNum::zeta(order, 1),
            modules: DashMap::new(),
            braidings: DashMap::new(),
        })
    }

    /// Process-wide instance with shared operator caches.
    pub fn shared(level: u32) -> Result<Arc<Self>, InvariantError> {
        if let Some(a) = ALGEBRAS.get(&level) {
            return Ok(a.clone());
        }
        let a = Arc::new(Self::new(level)?);
        Ok(ALGEBRAS.entry(level).or_insert(a).clone())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Cyclotomic order 4r of the field holding every structure constant.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `s = exp(h/4) = zeta_4r`, the eigenvalue of `K` on a weight-1 vector.
    pub fn s(&self) -> &CycNum {
        &self.s
    }

    pub fn q(&self) -> CycNum {
        self.s.pow(2).expect("nonzero")
    }

    /// The root `t = exp(-2 pi i / 4r)` named alongside the R-matrix; equal to `s^-1`.
    pub fn t(&self) -> CycNum {
        CycNum::zeta(self.order, -1)
    }

    fn s_pow(&self, e: i64) -> CycNum {
        CycNum::zeta(self.order, e)
    }

    /// `[n] = (q^n - q^-n) / (q - q^-1)`.
    pub fn quantum_integer(&self, n: i64) -> CycNum {
        let num = &self.s_pow(2 * n) - &self.s_pow(-2 * n);
        let den = &self.s_pow(2) - &self.s_pow(-2);
        num.checked_div(&den).expect("q is not +-1")
    }

    pub fn quantum_factorial(&self, n: i64) -> CycNum {
        (1..=n).fold(CycNum::one(self.order), |acc, i| &acc * &self.quantum_integer(i))
    }

    pub fn module(&self, color: u32, dual: bool) -> Result<Arc<IrrepModule>, InvariantError> {
        if color < 1 || color > self.level {
            return Err(InvariantError::ColorOutOfRange { color, max: self.level });
        }
        let key = StrandModule::new(color, dual);
        if let Some(m) = self.modules.get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.build_module(color, dual));
        Ok(self.modules.entry(key).or_insert(m).clone())
    }

    fn build_module(&self, color: u32, dual: bool) -> IrrepModule {
        let k = color as usize;
        let n = self.order;
        let weights: Vec<i64> = (0..k).map(|j| k as i64 - 1 - 2 * j as i64).collect();
        let mut x = CycMatrix::zeros(n, k, k);
        let mut y = CycMatrix::zeros(n, k, k);
        let mut kk = CycMatrix::zeros(n, k, k);
        let mut ki = CycMatrix::zeros(n, k, k);
        for j in 0..k {
            if j > 0 {
                x[(j - 1, j)] = self.quantum_integer(j as i64);
            }
            if j + 1 < k {
                y[(j + 1, j)] = self.quantum_integer((k - 1 - j) as i64);
            }
            kk[(j, j)] = self.s_pow(weights[j]);
            ki[(j, j)] = self.s_pow(-weights[j]);
        }
        if !dual {
            return IrrepModule { level: self.level, color, dual, x, y, k: kk, k_inv: ki, weights };
        }
        let conj = |a: &CycMatrix| kk.mul(a).and_then(|m| m.mul(&ki)).expect("square").scale(&CycNum::from_int(n, -1)).transpose();
        IrrepModule {
            level: self.level,
            color,
            dual,
            x: conj(&x),
            y: conj(&y),
            k: ki.transpose(),
            k_inv: kk.transpose(),
            weights: weights.iter().map(|w| -w).collect(),
        }
    }

    fn strand_module(&self, m: StrandModule) -> Result<Arc<IrrepModule>, InvariantError> {
        self.module(m.color, m.dual)
    }

    /// Action of `Delta(u)` on `m1 (x) m2`.
    pub fn coproduct(&self, u: Gen, m1: &IrrepModule, m2: &IrrepModule) -> CycMatrix {
        match u {
            Gen::X | Gen::Y => m1.action(u).kron(&m2.k).add(&m1.k_inv.kron(m2.action(u))).expect("same shape"),
            Gen::K | Gen::KInv => m1.action(u).kron(m2.action(u)),
        }
    }

    /// Action of `S(u)` on `m`.
    pub fn antipode(&self, u: Gen, m: &IrrepModule) -> CycMatrix {
        match u {
            Gen::X | Gen::Y => {
                m.k.mul(m.action(u)).and_then(|a| a.mul(&m.k_inv)).expect("square").scale(&CycNum::from_int(self.order, -1))
            }
            Gen::K => m.k_inv.clone(),
            Gen::KInv => m.k.clone(),
        }
    }

    pub fn counit(&self, u: Gen) -> CycNum {
        match u {
            Gen::X | Gen::Y => CycNum::zero(self.order),
            Gen::K | Gen::KInv => CycNum::one(self.order),
        }
    }

    /// The universal R-matrix acting on `m1 (x) m2`.
    pub fn r_matrix(&self, m1: &IrrepModule, m2: &IrrepModule) -> CycMatrix {
        let n = self.order;
        let (d1, d2) = (m1.dim(), m2.dim());
        let q = self.q();
        let q_diff = &q - &q.inv().expect("nonzero");
        let kx = m1.k.mul(&m1.x).expect("square");
        let yk = m2.y.mul(&m2.k_inv).expect("square");
        let mut sum = CycMatrix::zeros(n, d1 * d2, d1 * d2);
        let (mut a, mut b) = (CycMatrix::identity(n, d1), CycMatrix::identity(n, d2));
        for k in 0..self.level as i64 {
            let coeff = q
                .pow(k * (k - 1) / 2)
                .and_then(|c| Ok(&c * &q_diff.pow(k)?))
                .and_then(|c| c.checked_div(&self.quantum_factorial(k)))
                .expect("[n]! is nonzero for n < r");
            let term = a.kron(&b).scale(&coeff);
            sum = sum.add(&term).expect("same shape");
            a = a.mul(&kx).expect("square");
            b = b.mul(&yk).expect("square");
            if a.entries().iter().all(CycNum::is_zero) || b.entries().iter().all(CycNum::is_zero) {
                break;
            }
        }
        let mut cartan = CycMatrix::zeros(n, d1 * d2, d1 * d2);
        for (i, w1) in m1.weights.iter().enumerate() {
            for (j, w2) in m2.weights.iter().enumerate() {
                cartan[(i * d2 + j, i * d2 + j)] = self.s_pow(w1 * w2);
            }
        }
        cartan.mul(&sum).expect("square")
    }

    /// `P: V1 (x) V2 -> V2 (x) V1`.
    pub fn flip(&self, d1: usize, d2: usize) -> CycMatrix {
        let mut p = CycMatrix::zeros(self.order, d1 * d2, d1 * d2);
        for i in 0..d1 {
            for j in 0..d2 {
                p[(j * d1 + i, i * d2 + j)] = CycNum::one(self.order);
            }
        }
        p
    }

    /// `R_check = P R: a (x) b -> b (x) a`.
    pub fn braiding(&self, a: StrandModule, b: StrandModule) -> Result<Arc<CycMatrix>, InvariantError> {
        self.cached_braiding(a, b, false)
    }

    /// Inverse of `braiding(a, b)`, mapping `b (x) a -> a (x) b`.
    pub fn braiding_inv(&self, a: StrandModule, b: StrandModule) -> Result<Arc<CycMatrix>, InvariantError> {
        self.cached_braiding(a, b, true)
    }

    fn cached_braiding(&self, a: StrandModule, b: StrandModule, inverse: bool) -> Result<Arc<CycMatrix>, InvariantError> {
        let key = (a, b, inverse);
        if let Some(m) = self.braidings.get(&key) {
            return Ok(m.clone());
        }
        let m = if inverse {
            self.braiding(a, b)?.inverse()?
        } else {
            let (ma, mb) = (self.strand_module(a)?, self.strand_module(b)?);
            self.flip(ma.dim(), mb.dim()).mul(&self.r_matrix(&ma, &mb))?
        };
        Ok(self.braidings.entry(key).or_insert(Arc::new(m)).clone())
    }

    /// Matrix of a cup or cap on color `k`; caps are `1 x k^2`, cups `k^2 x 1`.
    pub fn cupcap_matrix(&self, kind: CupCap, color: u32) -> Result<CycMatrix, InvariantError> {
        let m = self.module(color, false)?;
        let k = m.dim();
        let n = self.order;
        let (rows, cols) = match kind {
            CupCap::E | CupCap::ECheck => (1, k * k),
            CupCap::N | CupCap::NCheck => (k * k, 1),
        };
        let mut out = CycMatrix::zeros(n, rows, cols);
        for i in 0..k {
            let v = match kind {
                CupCap::E | CupCap::N => CycNum::one(n),
                CupCap::ECheck => self.s_pow(2 * m.weights[i]),
                CupCap::NCheck => self.s_pow(-2 * m.weights[i]),
            };
            let idx = i * k + i;
            if rows == 1 {
                out[(0, idx)] = v;
            } else {
                out[(idx, 0)] = v;
            }
        }
        Ok(out)
    }

    pub fn cupcap(&self, kind: CupCap, color: u32) -> Result<Operator, InvariantError> {
        let v = StrandModule::new(color, false);
        let d = StrandModule::new(color, true);
        let matrix = self.cupcap_matrix(kind, color)?;
        let (domain, codomain) = match kind {
            CupCap::E => (vec![d, v], vec![]),
            CupCap::ECheck => (vec![v, d], vec![]),
            CupCap::N => (vec![], vec![v, d]),
            CupCap::NCheck => (vec![], vec![d, v]),
        };
        Operator::new(domain, codomain, matrix)
    }

    pub fn braiding_operator(&self, a: StrandModule, b: StrandModule) -> Result<Operator, InvariantError> {
        Operator::new(vec![a, b], vec![b, a], (*self.braiding(a, b)?).clone())
    }

    pub fn braiding_inv_operator(&self, a: StrandModule, b: StrandModule) -> Result<Operator, InvariantError> {
        Operator::new(vec![b, a], vec![a, b], (*self.braiding_inv(a, b)?).clone())
    }

    /// Checks the defining relations on a module: `K X K^-1 = q X`, `K Y K^-1 = q^-1 Y`,
    /// `[X, Y] = (K^2 - K^-2) / (q - q^-1)`, `X^r = Y^r = 0`, `K^4r = 1`.
    pub fn relations_hold(&self, m: &IrrepModule) -> bool {
        let q = self.q();
        let qi = q.inv().expect("nonzero");
        let mul = |a: &CycMatrix, b: &CycMatrix| a.mul(b).expect("square");
        let kxk = mul(&mul(&m.k, &m.x), &m.k_inv);
        let kyk = mul(&mul(&m.k, &m.y), &m.k_inv);
        let comm = mul(&m.x, &m.y).sub(&mul(&m.y, &m.x)).expect("same shape");
        let k2 = mul(&m.k, &m.k);
        let k2i = mul(&m.k_inv, &m.k_inv);
        let rhs = k2.sub(&k2i).expect("same shape").scale(&(&q - &qi).inv().expect("nonzero"));
        let r = self.level;
        let zero = CycMatrix::zeros(self.order, m.dim(), m.dim());
        kxk == m.x.scale(&q)
            && kyk == m.y.scale(&qi)
            && comm == rhs
            && m.x.pow(r).expect("square") == zero
            && m.y.pow(r).expect("square") == zero
            && m.k.pow(4 * r).expect("square").is_identity()
            && mul(&m.k, &m.k_inv).is_identity()
    }

    /// `R Delta(u) = Delta^op(u) R` on `m1 (x) m2` for `u` in {X, Y, K}.
    pub fn quasi_triangular_on(&self, m1: &IrrepModule, m2: &IrrepModule) -> bool {
        let r = self.r_matrix(m1, m2);
        let p = self.flip(m1.dim(), m2.dim());
        let pt = p.transpose();
        [Gen::X, Gen::Y, Gen::K].into_iter().all(|u| {
            let lhs = r.mul(&self.coproduct(u, m1, m2)).expect("shape");
            let op = pt.mul(&self.coproduct(u, m2, m1)).and_then(|a| a.mul(&p)).expect("shape");
            lhs == op.mul(&r).expect("shape")
        })
    }
}

/// `V^k` at level `r`.
pub fn module(k: u32, r: u32) -> Result<Arc<IrrepModule>, InvariantError> {
    QuantumAlgebra::shared(r)?.module(k, false)
}

/// `[k] = sin(pi k / r) / sin(pi / r)` as an element of Q(zeta_4r).
pub fn quantum_integer(k: i64, r: u32) -> Result<CycNum, InvariantError> {
    Ok(QuantumAlgebra::shared(r)?.quantum_integer(k))
}

pub fn braiding(k: u32, l: u32, r: u32) -> Result<Operator, InvariantError> {
    QuantumAlgebra::shared(r)?.braiding_operator(StrandModule::new(k, false), StrandModule::new(l, false))
}

pub fn braiding_inv(k: u32, l: u32, r: u32) -> Result<Operator, InvariantError> {
    QuantumAlgebra::shared(r)?.braiding_inv_operator(StrandModule::new(k, false), StrandModule::new(l, false))
}

pub fn cupcap(kind: CupCap, k: u32, r: u32) -> Result<Operator, InvariantError> {
    QuantumAlgebra::shared(r)?.cupcap(kind, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> Arc<QuantumAlgebra> {
        QuantumAlgebra::shared(4).unwrap()
    }

    #[test]
    fn quantum_integers_at_level_four() {
        let a = alg();
        assert!(a.quantum_integer(1).is_one());
        assert_eq!(a.quantum_integer(2), CycNum::sqrt2(16));
        assert!(a.quantum_integer(3).is_one());
        assert!(a.quantum_integer(4).is_zero());
    }

    #[test]
    fn modules_satisfy_relations() {
        let a = alg();
        for k in 1..=4 {
            for dual in [false, true] {
                let m = a.module(k, dual).unwrap();
                assert!(a.relations_hold(&m), "k = {k}, dual = {dual}");
            }
        }
        assert!(a.module(5, false).is_err());
        assert!(a.module(0, false).is_err());
    }

    #[test]
    fn trivial_module() {
        let m = module(1, 4).unwrap();
        assert!(m.x.entries()[0].is_zero() && m.y.entries()[0].is_zero());
        assert!(m.k.is_identity());
    }

    #[test]
    fn commutator_eigenvalues_on_v2() {
        let a = alg();
        let m = a.module(2, false).unwrap();
        let comm = m.x.mul(&m.y).unwrap().sub(&m.y.mul(&m.x).unwrap()).unwrap();
        assert!(comm[(0, 0)].is_one());
        assert_eq!(comm[(1, 1)], CycNum::from_int(16, -1));
    }

    #[test]
    fn quasi_triangular_small() {
        let a = alg();
        for (k, l) in [(2, 2), (2, 3), (3, 2)] {
            for (dk, dl) in [(false, false), (true, false), (false, true), (true, true)] {
                let (m1, m2) = (a.module(k, dk).unwrap(), a.module(l, dl).unwrap());
                assert!(a.quasi_triangular_on(&m1, &m2), "{k}{dk} {l}{dl}");
            }
        }
    }

    #[test]
    fn braiding_with_trivial_color_is_identity() {
        for l in 1..=3 {
            let b = braiding(1, l, 4).unwrap();
            assert!(b.matrix().is_identity());
        }
    }

    #[test]
    fn braiding_inverse_pair() {
        let b = braiding(2, 2, 4).unwrap();
        let bi = braiding_inv(2, 2, 4).unwrap();
        assert!(bi.compose(&b).unwrap().matrix().is_identity());
        let b = braiding(2, 3, 4).unwrap();
        let bi = braiding_inv(2, 3, 4).unwrap();
        assert!(bi.compose(&b).unwrap().matrix().is_identity());
        assert!(b.compose(&b).is_err());
    }

    #[test]
    fn loops_give_quantum_dimensions() {
        let a = alg();
        for k in 1..=4 {
            let e = a.cupcap(CupCap::E, k).unwrap();
            let n_check = a.cupcap(CupCap::NCheck, k).unwrap();
            let e_check = a.cupcap(CupCap::ECheck, k).unwrap();
            let n = a.cupcap(CupCap::N, k).unwrap();
            let loop1 = e.compose(&n_check).unwrap().scalar().unwrap();
            let loop2 = e_check.compose(&n).unwrap().scalar().unwrap();
            assert_eq!(loop1, a.quantum_integer(k as i64));
            assert_eq!(loop2, a.quantum_integer(k as i64));
        }
        let e = cupcap(CupCap::E, 1, 4).unwrap();
        let n = cupcap(CupCap::N, 1, 4).unwrap();
        assert!(e.compose(&n).is_err(), "E expects V* V, N produces V V*");
    }

    #[test]
    fn zigzag_identities() {
        let a = alg();
        for k in 1..=3 {
            let v = StrandModule::new(k, false);
            let d = StrandModule::new(k, true);
            let id_v = Operator::identity(16, vec![v]);
            let id_d = Operator::identity(16, vec![d]);
            // (id_V (x) E) o (N (x) id_V) = id_V
            let s1 = a.cupcap(CupCap::N, k).unwrap().tensor(&id_v);
            let s2 = id_v.tensor(&a.cupcap(CupCap::E, k).unwrap());
            assert_eq!(s2.compose(&s1).unwrap(), id_v);
            // (E (x) id_V*) o (id_V* (x) N) = id_V*
            let t1 = id_d.tensor(&a.cupcap(CupCap::N, k).unwrap());
            let t2 = a.cupcap(CupCap::E, k).unwrap().tensor(&id_d);
            assert_eq!(t2.compose(&t1).unwrap(), id_d);
            // the checked pair
            let u1 = id_v.tensor(&a.cupcap(CupCap::NCheck, k).unwrap());
            let u2 = a.cupcap(CupCap::ECheck, k).unwrap().tensor(&id_v);
            assert_eq!(u2.compose(&u1).unwrap(), id_v);
            let w1 = a.cupcap(CupCap::NCheck, k).unwrap().tensor(&id_d);
            let w2 = id_d.tensor(&a.cupcap(CupCap::ECheck, k).unwrap());
            assert_eq!(w2.compose(&w1).unwrap(), id_d);
        }
    }
}
