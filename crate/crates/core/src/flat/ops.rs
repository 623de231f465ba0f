//! Flat-space differential operators, with the geometer's signs:
//! Δ = −Σ∂², δω = −Σ∂_iω_i, (δh)_k = −Σ∂_i h_ik, δ*ω = ½(∂_iω_j + ∂_jω_i),
//! B = δ + ½ d∘tr. The Lichnerowicz Laplacian is the componentwise Δ here.

use num_traits::One;

use super::expr::{FieldExpr, RadialPoly};
use crate::numeric::{qf, Q};

pub fn partial_derivative(f: &FieldExpr, i: usize) -> FieldExpr {
    f.map(|p| p.partial(i))
}

/// Componentwise Δ = −Σ∂²; on rank 1 this is Δ₁ and on rank 2 it is Δ_L.
pub fn laplacian(f: &FieldExpr) -> FieldExpr {
    f.map(|p| -&p.sum_second_partials())
}

/// δ on 1-forms (→ function) and symmetric 2-tensors (→ 1-form).
pub fn divergence(f: &FieldExpr) -> FieldExpr {
    let n = f.n();
    match f.rank() {
        1 => {
            let mut acc = RadialPoly::zero(n);
            for i in 0..n {
                acc = &acc - &f.component(&[i]).partial(i);
            }
            FieldExpr::scalar(acc)
        }
        2 => FieldExpr::one_form(
            (0..n)
                .map(|k| {
                    (0..n).fold(RadialPoly::zero(n), |acc, i| &acc - &f.component(&[i, k]).partial(i))
                })
                .collect(),
        ),
        r => panic!("divergence of a rank-{r} field"),
    }
}

/// df for a function.
pub fn differential(f: &FieldExpr) -> FieldExpr {
    assert_eq!(f.rank(), 0, "differential of a non-scalar");
    let p = f.as_scalar();
    FieldExpr::one_form((0..f.n()).map(|i| p.partial(i)).collect())
}

/// δ*ω = ½(∂_iω_j + ∂_jω_i).
pub fn sym_gradient(w: &FieldExpr) -> FieldExpr {
    assert_eq!(w.rank(), 1, "sym_gradient of a non-1-form");
    let half = qf(1, 2);
    let grads: Vec<Vec<RadialPoly>> =
        (0..w.n()).map(|i| (0..w.n()).map(|j| w.component(&[j]).partial(i)).collect()).collect();
    FieldExpr::two_tensor(w.n(), |i, j| (&grads[i][j] + &grads[j][i]).scale(&half))
}

/// ∇²f = δ*df.
pub fn hessian(f: &FieldExpr) -> FieldExpr {
    let df = differential(f);
    let n = f.n();
    FieldExpr::two_tensor(n, |i, j| df.component(&[j]).partial(i))
}

pub fn trace(h: &FieldExpr) -> FieldExpr {
    assert_eq!(h.rank(), 2, "trace of a non-2-tensor");
    FieldExpr::scalar((0..h.n()).fold(RadialPoly::zero(h.n()), |acc, i| &acc + h.component(&[i, i])))
}

/// B h = δh + ½ d(tr h).
pub fn bianchi_op(h: &FieldExpr) -> FieldExpr {
    let half = qf(1, 2);
    &divergence(h) + &differential(&trace(h)).scale(&half)
}

/// ι_x h = h(x, ·) = r·h(∂_r, ·).
pub fn radial_contraction(h: &FieldExpr) -> FieldExpr {
    assert_eq!(h.rank(), 2);
    let n = h.n();
    FieldExpr::one_form(
        (0..n)
            .map(|k| (0..n).fold(RadialPoly::zero(n), |acc, i| &acc + &(&RadialPoly::x(n, i) * h.component(&[i, k]))))
            .collect(),
    )
}

/// The metric times a function.
pub fn times_metric(f: &RadialPoly) -> FieldExpr {
    FieldExpr::metric(f.n()).mul_scalar(f)
}

/// a ⊗ b + b ⊗ a for 1-forms.
pub fn sym_product(a: &FieldExpr, b: &FieldExpr) -> FieldExpr {
    assert_eq!((a.rank(), b.rank()), (1, 1));
    FieldExpr::two_tensor(a.n(), |i, j| {
        &(a.component(&[i]) * b.component(&[j])) + &(b.component(&[i]) * a.component(&[j]))
    })
}

/// Trace-free part h − (1/n)(tr h)·g.
pub fn trace_free(h: &FieldExpr) -> FieldExpr {
    let t = trace(h);
    let c = -Q::one() / Q::from_integer((h.n() as i64).into());
    h + &times_metric(&t.as_scalar().scale(&c))
}
