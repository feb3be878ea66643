use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::connection::{check_dims, commutator_basis, levi_civita_with, Connection, JOps};
use super::consts::Consts;
use super::metric::{axpy, rational_vector, unit_vector, zero_vector, SigmaMetric, Vector};
use crate::error::Result;
use crate::exactmath::{rat, LaurentPoly, Rational};
use crate::liealg::LieAlgebra;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    /// R(u,v) = ∇_{[u,v]} − [∇_u, ∇_v] from the Levi-Civita connection.
    Koszul,
    /// Closed formula in the operators J_i.
    JFormula,
}

/// R(e_s, e_t) e_u for all s, t, u, with R(u,v) = ∇_{[u,v]} − [∇_u, ∇_v].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvatureTensor {
    n: usize,
    r: Vec<Vector>,
}

/// Coefficient of e_k in R(e_s, e_t) e_u.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub s: usize,
    pub t: usize,
    pub u: usize,
    pub k: usize,
    pub value: LaurentPoly,
}

#[derive(Serialize)]
pub struct ComponentRecord {
    pub s: usize,
    pub t: usize,
    pub u: usize,
    pub k: usize,
    pub poly: String,
}

impl Component {
    pub fn record(&self) -> ComponentRecord {
        ComponentRecord {
            s: self.s + 1,
            t: self.t + 1,
            u: self.u + 1,
            k: self.k + 1,
            poly: self.value.to_string(),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R(e{},e{})e{} = ({})·e{}",
            self.s + 1,
            self.t + 1,
            self.u + 1,
            self.value,
            self.k + 1
        )
    }
}

impl CurvatureTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: usize, t: usize, u: usize) -> &Vector {
        &self.r[(s * self.n + t) * self.n + u]
    }

    pub fn component(&self, s: usize, t: usize, u: usize, k: usize) -> &LaurentPoly {
        &self.get(s, t, u)[k]
    }

    /// Nonzero components with s < t, in index order.
    pub fn components(&self) -> Vec<Component> {
        let n = self.n;
        let mut out = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                for u in 0..n {
                    for (k, v) in self.get(s, t, u).iter().enumerate() {
                        if !v.is_zero() {
                            out.push(Component {
                                s,
                                t,
                                u,
                                k,
                                value: v.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    /// R(e_s,e_t) = −R(e_t,e_s) and ⟨R(u,v)w,z⟩ = −⟨R(u,v)z,w⟩ on basis vectors.
    pub fn has_symmetries(&self, m: &SigmaMetric) -> bool {
        let n = self.n;
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let a = self.get(s, t, u);
                    let b = self.get(t, s, u);
                    if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                        return false;
                    }
                    for z in 0..n {
                        let lhs = m.inner(a, &unit_vector(n, z));
                        let rhs = m.inner(self.get(s, t, z), &unit_vector(n, u));
                        if !(lhs + rhs).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Evaluates every entry at a point indexed by variable.
    pub fn eval(&self, point: &[Rational]) -> Result<CurvatureTensor> {
        let r = self
            .r
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.eval(point).map(LaurentPoly::constant))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CurvatureTensor { n: self.n, r })
    }

    /// R(u, v) w for constant-coefficient vectors.
    pub fn apply(&self, u: &[LaurentPoly], v: &[LaurentPoly], w: &[LaurentPoly]) -> Vector {
        let n = self.n;
        let mut out = zero_vector(n);
        for (s, us) in u.iter().enumerate() {
            if us.is_zero() {
                continue;
            }
            for (t, vt) in v.iter().enumerate() {
                if vt.is_zero() {
                    continue;
                }
                let uv = us * vt;
                for (x, wx) in w.iter().enumerate() {
                    if wx.is_zero() {
                        continue;
                    }
                    axpy(&mut out, &(&uv * wx), self.get(s, t, x));
                }
            }
        }
        out
    }
}

impl fmt::Display for CurvatureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let mut any = false;
        for s in 0..n {
            for t in s + 1..n {
                for u in 0..n {
                    let terms: Vec<String> = self
                        .get(s, t, u)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| format!("({v})·e{}", k + 1))
                        .collect();
                    if !terms.is_empty() {
                        any = true;
                        writeln!(
                            f,
                            "R(e{},e{})e{} = {}",
                            s + 1,
                            t + 1,
                            u + 1,
                            terms.join(" + ")
                        )?;
                    }
                }
            }
        }
        if !any {
            writeln!(f, "R = 0")?;
        }
        Ok(())
    }
}

pub fn riemann_tensor(a: &LieAlgebra, m: &SigmaMetric, route: Route) -> Result<CurvatureTensor> {
    check_dims(a, m)?;
    let targets = commutator_basis(a)?;
    let c = Consts::new(a);
    let j = JOps::new(&c, m, targets);
    let r = match route {
        Route::Koszul => {
            let conn = levi_civita_with(&c, m, &j);
            koszul_route(&c, &conn)
        }
        Route::JFormula => j_route(&c, m, &j),
    };
    Ok(r)
}

fn assemble(n: usize, f: impl Fn(usize, usize, usize) -> Vector + Sync) -> CurvatureTensor {
    // fill s < t, then antisymmetry
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .collect();
    let blocks: Vec<Vec<Vector>> = pairs
        .par_iter()
        .map(|&(s, t)| (0..n).map(|u| f(s, t, u)).collect())
        .collect();
    let mut r = vec![zero_vector(n); n * n * n];
    for (&(s, t), block) in pairs.iter().zip(blocks) {
        for (u, v) in block.into_iter().enumerate() {
            r[(t * n + s) * n + u] = v.iter().map(|x| -x).collect();
            r[(s * n + t) * n + u] = v;
        }
    }
    CurvatureTensor { n, r }
}

fn koszul_route(c: &Consts, conn: &Connection) -> CurvatureTensor {
    let n = c.n;
    assemble(n, |s, t, u| {
        let mut out = zero_vector(n);
        for (k, coef) in c.terms(s, t) {
            let g = conn.gamma(*k, u);
            for (o, x) in out.iter_mut().zip(g) {
                o.add_scaled(coef, x);
            }
        }
        let a = conn.nabla_basis(s, conn.gamma(t, u));
        let b = conn.nabla_basis(t, conn.gamma(s, u));
        for x in 0..n {
            out[x] -= &a[x];
            out[x] += &b[x];
        }
        out
    })
}

fn j_route(c: &Consts, m: &SigmaMetric, j: &JOps) -> CurvatureTensor {
    let n = c.n;
    let p = j.targets.len();
    let e = |i: usize| unit_vector(n, i);
    let ev: Vec<Vector> = j.targets.iter().map(|&k| e(k)).collect();
    let q = LaurentPoly::constant(rat(1, 4));
    let h = LaurentPoly::constant(rat(1, 2));
    let ip = |u: &[LaurentPoly], v: &[LaurentPoly]| m.inner(u, v);
    // ⟨e_i, e_j⟩ for commutator indices
    let eij: Vec<Vec<LaurentPoly>> = (0..p)
        .map(|a| (0..p).map(|b| ip(&ev[a], &ev[b])).collect())
        .collect();
    assemble(n, |s, t, wi| {
        let (u, v, w) = (e(s), e(t), e(wi));
        let mut out = zero_vector(n);
        let ju: Vec<Vector> = (0..p).map(|i| j.apply(i, &u)).collect();
        let jv: Vec<Vector> = (0..p).map(|i| j.apply(i, &v)).collect();
        let jw: Vec<Vector> = (0..p).map(|i| j.apply(i, &w)).collect();
        let e_u: Vec<LaurentPoly> = ev.iter().map(|x| ip(x, &u)).collect();
        let e_v: Vec<LaurentPoly> = ev.iter().map(|x| ip(x, &v)).collect();
        let e_w: Vec<LaurentPoly> = ev.iter().map(|x| ip(x, &w)).collect();
        for i in 0..p {
            for jj in 0..p {
                let g = &eij[i][jj];
                if !g.is_zero() {
                    axpy(&mut out, &(&(&q * g) * &ip(&jv[i], &w)), &ju[jj]);
                    axpy(&mut out, &-(&(&q * g) * &ip(&ju[i], &w)), &jv[jj]);
                    axpy(&mut out, &-(&(&h * g) * &ip(&ju[i], &v)), &jw[jj]);
                }
                let wv = &e_w[i] * &e_v[jj];
                let wu = &e_w[i] * &e_u[jj];
                let uv = &e_u[i] * &e_v[jj];
                if !wv.is_zero() {
                    axpy(&mut out, &(&q * &wv), &j.apply(jj, &ju[i]));
                }
                if !wu.is_zero() {
                    axpy(&mut out, &-(&q * &wu), &j.apply(jj, &jv[i]));
                }
                if !uv.is_zero() {
                    axpy(&mut out, &(&q * &uv), &j.apply(jj, &jw[i]));
                    axpy(&mut out, &-(&q * &uv), &j.apply(i, &jw[jj]));
                }
                let mut coef = LaurentPoly::zero();
                if !e_w[i].is_zero() {
                    let comm: Vector = j
                        .apply(jj, &ju[i])
                        .iter()
                        .zip(j.apply(i, &ju[jj]))
                        .map(|(a, b)| a - &b)
                        .collect();
                    coef += &(&e_w[i] * &ip(&comm, &v));
                }
                if !e_v[i].is_zero() {
                    coef += &(&e_v[i] * &ip(&ju[jj], &jw[i]));
                }
                if !e_u[i].is_zero() {
                    coef -= &(&e_u[i] * &ip(&jv[jj], &jw[i]));
                }
                if !coef.is_zero() {
                    axpy(&mut out, &(&q * &coef), &ev[jj]);
                }
            }
        }
        let uv = c.bracket(&u, &v);
        let vw = c.bracket(&v, &w);
        let uw = c.bracket(&u, &w);
        axpy(&mut out, &-q.clone(), &c.bracket(&w, &uv));
        for jj in 0..p {
            let ej = &ev[jj];
            axpy(&mut out, &-(&h * &ip(&w, ej)), &j.apply(jj, &uv));
            axpy(&mut out, &(&q * &e_u[jj]), &j.apply(jj, &vw));
            axpy(&mut out, &-(&q * &ip(&v, ej)), &j.apply(jj, &uw));
            let a = ip(&c.bracket(&v, ej), &w) + ip(&c.bracket(&w, ej), &v);
            axpy(&mut out, &-(&q * &a), &ju[jj]);
            let b = ip(&c.bracket(&u, ej), &w) + ip(&c.bracket(&w, ej), &u);
            axpy(&mut out, &(&q * &b), &jv[jj]);
        }
        out
    })
}

/// ⟨R(u, v) u, v⟩ for rational vectors u, v.
pub fn sectional_component(
    r: &CurvatureTensor,
    m: &SigmaMetric,
    u: &[Rational],
    v: &[Rational],
) -> LaurentPoly {
    let (u, v) = (rational_vector(u), rational_vector(v));
    m.inner(&r.apply(&u, &v, &u), &v)
}
