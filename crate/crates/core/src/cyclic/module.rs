use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec};

/// Structure maps of a (para)cyclic module. Faces and degeneracies are
/// unsigned; `Cycle` is the unsigned rotation `τ`, the signed cyclic operator
/// being `t_n = (-1)^n τ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
    Cycle,
    /// The extra degeneracy `(a_0, ..., a_n) -> (1, a_0, ..., a_n)`.
    Extra,
    /// The twist applied to every tensor factor; `τ_n^{n+1}` equals it.
    Twist,
}

impl Op {
    /// Degree of the output when applied in degree `n`.
    pub fn target(self, n: usize) -> usize {
        match self {
            Op::Face(_) => n - 1,
            Op::Degeneracy(_) | Op::Extra => n + 1,
            Op::Cycle | Op::Twist => n,
        }
    }

    fn defined_at(self, n: usize) -> bool {
        match self {
            Op::Face(i) => n >= 1 && i <= n,
            Op::Degeneracy(i) => i <= n,
            _ => true,
        }
    }
}

/// A graded module with the structure maps of a paracyclic module, available
/// in degrees `0..=top()`.
pub trait CyclicModule<F: Field> {
    fn field(&self) -> &F;
    fn top(&self) -> usize;
    fn dim(&self, n: usize) -> usize;
    /// `op` applied to a vector of degree `n`.
    fn apply(&self, op: Op, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem>;

    /// Whether applying the twist is known to be the identity.
    fn twist_is_identity(&self) -> bool {
        false
    }
}

/// Applies `ops` as a composite: the last entry acts first.
pub fn compose<F: Field, M: CyclicModule<F> + ?Sized>(
    m: &M,
    ops: &[Op],
    n: usize,
    v: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut v = v.clone();
    let mut deg = n;
    for &op in ops.iter().rev() {
        if v.is_zero() {
            return v;
        }
        v = m.apply(op, deg, &v);
        deg = op.target(deg);
    }
    v
}

fn max_degree(ops: &[Op], n: usize) -> Option<usize> {
    let mut deg = n;
    let mut hi = n;
    for &op in ops.iter().rev() {
        if !op.defined_at(deg) {
            return None;
        }
        deg = op.target(deg);
        hi = hi.max(deg);
    }
    Some(hi)
}

/// `b = Σ (-1)^i d_i` in degree `n >= 1`.
pub fn apply_b<F: Field, M: CyclicModule<F> + ?Sized>(m: &M, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let f = m.field();
    let mut acc = SparseVec::new();
    for i in 0..=n {
        let di = m.apply(Op::Face(i), n, v);
        let sign = if i % 2 == 0 { f.one() } else { f.from_i64(-1) };
        acc = acc.combine(f, &f.one(), &di, &sign);
    }
    acc
}

/// The signed cyclic operator `t_n = (-1)^n τ_n`.
pub fn apply_t<F: Field, M: CyclicModule<F> + ?Sized>(m: &M, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let w = m.apply(Op::Cycle, n, v);
    if n.is_multiple_of(2) {
        w
    } else {
        w.scaled(m.field(), &m.field().from_i64(-1))
    }
}

/// Connes' operator `B = (1 - t_{n+1}) s N` with `N = Σ_{i=0}^{n} t_n^i`.
pub fn apply_big_b<F: Field, M: CyclicModule<F> + ?Sized>(m: &M, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let f = m.field();
    let mut norm = v.clone();
    let mut power = v.clone();
    for _ in 0..n {
        power = apply_t(m, n, &power);
        norm = norm.add(f, &power);
    }
    let lifted = m.apply(Op::Extra, n, &norm);
    let rotated = apply_t(m, n + 1, &lifted);
    lifted.sub(f, &rotated)
}

/// Matrix of a linear map on the basis of degree `n`, column by column.
pub fn operator_matrix<F: Field, M: CyclicModule<F> + ?Sized>(
    m: &M,
    n: usize,
    rows: usize,
    column: impl Fn(&SparseVec<F::Elem>) -> SparseVec<F::Elem>,
) -> SparseMatrix<F::Elem> {
    let f = m.field();
    let cols = (0..m.dim(n)).map(|x| column(&SparseVec::unit(f, x))).collect();
    SparseMatrix::from_columns(rows, cols)
}

/// Matrix of a single structure map in degree `n`.
pub fn op_matrix<F: Field, M: CyclicModule<F> + ?Sized>(m: &M, op: Op, n: usize) -> SparseMatrix<F::Elem> {
    operator_matrix(m, n, m.dim(op.target(n)), |e| m.apply(op, n, e))
}

fn check_identity<F: Field, M: CyclicModule<F> + ?Sized>(
    m: &M,
    name: &str,
    n: usize,
    lhs: &[Op],
    rhs: &[Op],
) -> Result<()> {
    let (Some(hl), Some(hr)) = (max_degree(lhs, n), max_degree(rhs, n)) else {
        return Ok(());
    };
    if hl.max(hr) > m.top() {
        return Ok(());
    }
    let f = m.field();
    for x in 0..m.dim(n) {
        let e = SparseVec::unit(f, x);
        if compose(m, lhs, n, &e) != compose(m, rhs, n, &e) {
            return Err(Error::IdentityFails { identity: name.to_string(), degree: n, witness: x });
        }
    }
    Ok(())
}

/// All simplicial identities among faces and degeneracies whose composites
/// stay within degrees `0..=top`, checked on every basis vector.
pub fn check_simplicial_identities<F: Field, M: CyclicModule<F> + ?Sized>(m: &M) -> Result<()> {
    use Op::{Degeneracy as S, Face as D};
    let top = m.top();
    for n in 0..=top {
        for j in 0..=n {
            for i in 0..j {
                check_identity(m, &format!("d_{i} d_{j} = d_{} d_{i}", j - 1), n, &[D(i), D(j)], &[D(j - 1), D(i)])?;
            }
        }
        for j in 0..=n {
            for i in 0..=j {
                check_identity(m, &format!("s_{i} s_{j} = s_{} s_{i}", j + 1), n, &[S(i), S(j)], &[S(j + 1), S(i)])?;
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                let name = format!("d_{i} s_{j}");
                if i < j {
                    check_identity(m, &name, n, &[D(i), S(j)], &[S(j - 1), D(i)])?;
                } else if i == j || i == j + 1 {
                    check_identity(m, &name, n, &[D(i), S(j)], &[])?;
                } else {
                    check_identity(m, &name, n, &[D(i), S(j)], &[S(j), D(i - 1)])?;
                }
            }
        }
    }
    Ok(())
}

/// Relations between the rotation and the faces/degeneracies, and the
/// compatibility of the twist with every structure map.
pub fn check_paracyclic_identities<F: Field, M: CyclicModule<F> + ?Sized>(m: &M) -> Result<()> {
    use Op::{Cycle as T, Degeneracy as S, Face as D, Twist as W};
    for n in 0..=m.top() {
        if n >= 1 {
            check_identity(m, "d_0 τ = d_n", n, &[D(0), T], &[D(n)])?;
            for i in 1..=n {
                check_identity(m, &format!("d_{i} τ = τ d_{}", i - 1), n, &[D(i), T], &[T, D(i - 1)])?;
            }
        }
        check_identity(m, "s_0 τ = τ^2 s_n", n, &[S(0), T], &[T, T, S(n)])?;
        for i in 1..=n {
            check_identity(m, &format!("s_{i} τ = τ s_{}", i - 1), n, &[S(i), T], &[T, S(i - 1)])?;
        }
        if !m.twist_is_identity() {
            check_identity(m, "θ τ = τ θ", n, &[W, T], &[T, W])?;
            check_identity(m, "θ s = s θ", n, &[W, Op::Extra], &[Op::Extra, W])?;
            for i in 0..=n {
                check_identity(m, &format!("θ d_{i} = d_{i} θ"), n, &[W, D(i)], &[D(i), W])?;
                check_identity(m, &format!("θ s_{i} = s_{i} θ"), n, &[W, S(i)], &[S(i), W])?;
            }
        }
    }
    Ok(())
}

/// `τ_n^{n+1}` equals the twist in every degree `0..=top`.
pub fn check_torsor_identity<F: Field, M: CyclicModule<F> + ?Sized>(m: &M) -> Result<()> {
    for n in 0..=m.top() {
        check_identity(m, "τ^{n+1} = θ", n, &vec![Op::Cycle; n + 1], &[Op::Twist])?;
    }
    Ok(())
}

/// `t_n^{n+1} = 1` in degrees `0..=top`.
pub fn check_cyclic_identity<F: Field, M: CyclicModule<F> + ?Sized>(m: &M) -> Result<()> {
    let f = m.field();
    for n in 0..=m.top() {
        for x in 0..m.dim(n) {
            let e = SparseVec::unit(f, x);
            let mut v = e.clone();
            for _ in 0..=n {
                v = apply_t(m, n, &v);
            }
            if v != e {
                return Err(Error::CyclicIdentityFails { degree: n, witness: x });
            }
        }
    }
    Ok(())
}

/// `b^2 = 0`, `B^2 = 0` and `bB + Bb = 0` on every basis vector, without
/// materializing matrices. Requires the cyclic identity for the last two.
pub fn check_mixed_identities<F: Field, M: CyclicModule<F> + ?Sized>(m: &M) -> Result<()> {
    let f = m.field();
    let top = m.top();
    let fail = |identity: &str, degree, witness| Error::IdentityFails { identity: identity.into(), degree, witness };
    for n in 0..=top {
        for x in 0..m.dim(n) {
            let e = SparseVec::unit(f, x);
            if n >= 2 && !apply_b(m, n - 1, &apply_b(m, n, &e)).is_zero() {
                return Err(fail("b^2 = 0", n, x));
            }
            if n + 2 <= top && !apply_big_b(m, n + 1, &apply_big_b(m, n, &e)).is_zero() {
                return Err(fail("B^2 = 0", n, x));
            }
            if n < top {
                let mut sum = apply_b(m, n + 1, &apply_big_b(m, n, &e));
                if n >= 1 {
                    sum = sum.add(f, &apply_big_b(m, n - 1, &apply_b(m, n, &e)));
                }
                if !sum.is_zero() {
                    return Err(fail("bB + Bb = 0", n, x));
                }
            }
        }
    }
    Ok(())
}
