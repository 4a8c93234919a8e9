//! Exhaustive axiom checks on a finished category.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CategoryData, UNIT};
use crate::scalars::Scalar;
use crate::treecalc::{
    apply_word, evaluate_closed, loop_word, twist_from_kink, DiagramState, Gate, WireState,
};

/// The first failing instance of one axiom, and how many instances failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub axiom: String,
    pub witness: String,
    pub instances: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub category: String,
    /// axiom → number of instances checked
    pub checked: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure(&self, axiom: &str) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    fn check(&mut self, axiom: &str, ok: bool, witness: impl FnOnce() -> String) {
        *self.checked.entry(axiom.to_string()).or_default() += 1;
        if ok {
            return;
        }
        match self.failures.iter_mut().find(|f| f.axiom == axiom) {
            Some(f) => f.instances += 1,
            None => self.failures.push(Failure {
                axiom: axiom.to_string(),
                witness: witness(),
                instances: 1,
            }),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total: usize = self.checked.values().sum();
        if self.passed() {
            return write!(f, "{}: pass ({total} instances over {} axioms)", self.category, self.checked.len());
        }
        writeln!(f, "{}: FAIL", self.category)?;
        for fl in &self.failures {
            writeln!(f, "  {} failed on {} instance(s); first: {}", fl.axiom, fl.instances, fl.witness)?;
        }
        Ok(())
    }
}

/// Runs every structural, coherence and engine-level check on `c`.
pub fn validate_category(c: &CategoryData) -> ValidationReport {
    let mut rep = ValidationReport {
        category: c.name().to_string(),
        ..Default::default()
    };
    structure(c, &mut rep);
    pentagon(c, &mut rep);
    heptagons(c, &mut rep);
    equivariance(c, &mut rep);
    engine(c, &mut rep);
    rep
}

fn structure(c: &CategoryData, rep: &mut ValidationReport) {
    let g = c.group();
    let e = g.identity();
    for x in c.labels() {
        let xd = c.dual(x);
        rep.check("dual", c.dual(xd) == x && c.admissible(x, xd, UNIT), || format!("x={x}"));
        rep.check("grading", c.grade(xd) == g.inv(c.grade(x)), || format!("dual of {x}"));
        rep.check("spherical", c.qdim(x) == c.qdim(xd), || format!("x={x}"));
        rep.check("pivotal", c.derive_pivotal(x).ok().as_ref() == Some(c.pivotal(x)), || {
            format!("x={x}")
        });
        if c.grade(x) == e {
            rep.check("twist", c.twist(x).is_some_and(|t| !t.is_zero()), || format!("x={x}"));
        }
        for h in g.elements() {
            let hx = c.act(h, x);
            rep.check("action-grade", c.grade(hx) == g.conj(h, c.grade(x)), || {
                format!("g={h}, x={x}")
            });
            rep.check("action-dual", c.act(h, xd) == c.dual(hx), || format!("g={h}, x={x}"));
            rep.check("action-qdim", c.qdim(hx) == c.qdim(x), || format!("g={h}, x={x}"));
            if c.grade(x) == e {
                rep.check("action-twist", c.twist(hx) == c.twist(x), || format!("g={h}, x={x}"));
            }
            for k in g.elements() {
                rep.check("action-composition", c.act(h, c.act(k, x)) == c.act(g.mul(h, k), x), || {
                    format!("g={h}, h={k}, x={x}")
                });
                rep.check("eta-nonzero", !c.eta(x, h, k).is_zero(), || format!("x={x}, g={h}, h={k}"));
            }
            rep.check("eta-normalized", c.eta(x, e, h).is_one() && c.eta(x, h, e).is_one(), || {
                format!("x={x}, g={h}")
            });
        }
        rep.check("action-identity", c.act(e, x) == x, || format!("x={x}"));
    }
    for a in c.labels() {
        for b in c.labels() {
            let mut d = c.zero();
            for &p in c.products(a, b) {
                d = d + c.qdim(p).clone();
                rep.check("grading", c.grade(p) == g.mul(c.grade(a), c.grade(b)), || {
                    format!("({a},{b};{p})")
                });
                rep.check("r-nonzero", !c.r(a, b, p).is_zero(), || format!("({a},{b};{p})"));
                let gb = c.act(c.grade(a), b);
                rep.check("braiding-target", c.admissible(gb, a, p), || format!("({a},{b};{p})"));
                for h in g.elements() {
                    rep.check("action-fusion", c.admissible(c.act(h, a), c.act(h, b), c.act(h, p)), || {
                        format!("g={h}, ({a},{b};{p})")
                    });
                    rep.check("u-nonzero", !c.u(h, a, b, p).is_zero(), || format!("g={h}, ({a},{b};{p})"));
                    if a == UNIT || b == UNIT || h == e {
                        rep.check("u-unit", c.u(h, a, b, p).is_one(), || format!("g={h}, ({a},{b};{p})"));
                    }
                }
                if a == UNIT || b == UNIT {
                    rep.check("r-unit", c.r(a, b, p).is_one(), || format!("({a},{b};{p})"));
                }
                if c.grade(a) == e && c.grade(b) == e {
                    let (ta, tb, tp) = (c.twist(a), c.twist(b), c.twist(p));
                    if let (Some(ta), Some(tb), Some(tp)) = (ta, tb, tp) {
                        let lhs = tp.clone();
                        let rhs = ta * tb * c.double_braiding_coefficient(a, b, p);
                        rep.check("balancing", lhs == rhs, || format!("({a},{b};{p})"));
                    }
                }
            }
            rep.check("dimension", d == c.qdim(a) * c.qdim(b), || format!("{a}⊗{b}"));
        }
    }
    for_f_keys(c, |[a, b, cc, d, e2, f]| {
        if a == UNIT || b == UNIT || cc == UNIT {
            rep.check("f-unit", c.f([a, b, cc, d, e2, f]).is_one(), || {
                format!("F{:?}", [a, b, cc, d, e2, f])
            });
        }
    });
}

/// Visits every admissible F index `[a,b,c,d,e,f]`.
fn for_f_keys(c: &CategoryData, mut visit: impl FnMut([usize; 6])) {
    for a in c.labels() {
        for b in c.labels() {
            for cc in c.labels() {
                for &e in c.products(a, b) {
                    for &d in c.products(e, cc) {
                        for &f in c.products(b, cc) {
                            if c.admissible(a, f, d) {
                                visit([a, b, cc, d, e, f]);
                            }
                        }
                    }
                }
            }
        }
    }
}

fn pentagon(c: &CategoryData, rep: &mut ValidationReport) {
    for a in c.labels() {
        for b in c.labels() {
            for cc in c.labels() {
                for d in c.labels() {
                    for &x in c.products(a, b) {
                        for &y in c.products(x, cc) {
                            for &e in c.products(y, d) {
                                for &z in c.products(cc, d) {
                                    for &w in c.products(b, z) {
                                        if !c.admissible(a, w, e) {
                                            continue;
                                        }
                                        let lhs = c.f([x, cc, d, e, y, z]) * c.f([a, b, z, e, x, w]);
                                        let mut rhs = c.zero();
                                        for &u in c.products(b, cc) {
                                            rhs = rhs
                                                + c.f([a, b, cc, y, x, u])
                                                    * c.f([a, u, d, e, y, w])
                                                    * c.f([b, cc, d, w, u, z]);
                                        }
                                        rep.check("pentagon", lhs == rhs, || {
                                            format!("a={a} b={b} c={cc} d={d} e={e} x={x} y={y} z={z} w={w}")
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn heptagons(c: &CategoryData, rep: &mut ValidationReport) {
    // braiding `a` past the product `b ⊗ c`
    for a in c.labels() {
        let g = c.grade(a);
        for b in c.labels() {
            for cc in c.labels() {
                let (gb, gc) = (c.act(g, b), c.act(g, cc));
                for d in c.labels() {
                    for &m in c.products(gb, gc) {
                        if !c.admissible(m, a, d) {
                            continue;
                        }
                        for &f in c.products(b, cc) {
                            if !c.admissible(a, f, d) {
                                continue;
                            }
                            let lhs = if m == c.act(g, f) {
                                c.r(a, f, d) * c.u(g, b, cc, f)
                            } else {
                                c.zero()
                            };
                            let mut rhs = c.zero();
                            for &e in c.products(a, b) {
                                for &k in c.products(a, cc) {
                                    rhs = rhs
                                        + c.finv([a, b, cc, d, f, e])
                                            * c.r(a, b, e)
                                            * c.f([gb, a, cc, d, e, k])
                                            * c.r(a, cc, k)
                                            * c.finv([gb, gc, a, d, k, m]);
                                }
                            }
                            rep.check("heptagon-1", lhs == rhs, || {
                                format!("a={a} b={b} c={cc} d={d} f={f} m={m}")
                            });
                        }
                    }
                }
            }
        }
    }
    // braiding the product `a ⊗ b` past `c`
    for a in c.labels() {
        let g = c.grade(a);
        for b in c.labels() {
            let h = c.grade(b);
            for cc in c.labels() {
                let hc = c.act(h, cc);
                let ghc = c.act(g, hc);
                for &e in c.products(a, b) {
                    for &d in c.products(e, cc) {
                        for &m in c.products(a, b) {
                            if !c.admissible(ghc, m, d) {
                                continue;
                            }
                            let mut lhs = c.zero();
                            for &f in c.products(b, cc) {
                                for &k in c.products(a, hc) {
                                    lhs = lhs
                                        + c.f([a, b, cc, d, e, f])
                                            * c.r(b, cc, f)
                                            * c.finv([a, hc, b, d, f, k])
                                            * c.r(a, hc, k)
                                            * c.eta(cc, g, h)
                                            * c.f([ghc, a, b, d, k, m]);
                                }
                            }
                            let rhs = if m == e { c.r(e, cc, d).clone() } else { c.zero() };
                            rep.check("heptagon-2", lhs == rhs, || {
                                format!("a={a} b={b} c={cc} d={d} e={e} m={m}")
                            });
                        }
                    }
                }
            }
        }
    }
}

/// Coherence of the action with η, U, F and R.
fn equivariance(c: &CategoryData, rep: &mut ValidationReport) {
    let grp = c.group();
    for x in c.labels() {
        for g in grp.elements() {
            for h in grp.elements() {
                for k in grp.elements() {
                    let lhs = c.eta(c.act(k, x), g, h) * c.eta(x, grp.mul(g, h), k);
                    let rhs = c.eta(x, h, k) * c.eta(x, g, grp.mul(h, k));
                    rep.check("eta-cocycle", lhs == rhs, || format!("x={x} g={g} h={h} k={k}"));
                }
            }
        }
    }
    for a in c.labels() {
        for b in c.labels() {
            for &p in c.products(a, b) {
                for g in grp.elements() {
                    for h in grp.elements() {
                        let (ha, hb, hp) = (c.act(h, a), c.act(h, b), c.act(h, p));
                        let lhs = c.eta(p, g, h) * c.u(grp.mul(g, h), a, b, p);
                        let rhs = c.eta(a, g, h) * c.eta(b, g, h) * c.u(h, a, b, p) * c.u(g, ha, hb, hp);
                        rep.check("eta-monoidal", lhs == rhs, || format!("g={g} h={h} ({a},{b};{p})"));
                    }
                    let ga = c.grade(a);
                    let conj = grp.conj(g, ga);
                    let lhs = c.r(c.act(g, a), c.act(g, b), c.act(g, p))
                        * c.u(g, a, b, p)
                        * c.eta(b, conj, g);
                    let rhs = c.r(a, b, p) * c.u(g, c.act(ga, b), a, p) * c.eta(b, g, ga);
                    rep.check("action-braiding", lhs == rhs, || format!("g={g} ({a},{b};{p})"));
                }
            }
        }
    }
    for g in grp.elements() {
        for_f_keys(c, |[a, b, cc, d, e, f]| {
            let act = |x| c.act(g, x);
            let lhs = c.f([act(a), act(b), act(cc), act(d), act(e), act(f)])
                * c.u(g, e, cc, d)
                * c.u(g, a, b, e);
            let rhs = c.f([a, b, cc, d, e, f]) * c.u(g, a, f, d) * c.u(g, b, cc, f);
            rep.check("action-associator", lhs == rhs, || {
                format!("g={g} F{:?}", [a, b, cc, d, e, f])
            });
        });
    }
}

/// Checks that the evaluation engine reproduces dimensions, snakes and twists.
fn engine(c: &CategoryData, rep: &mut ValidationReport) {
    for x in c.labels() {
        for w in [WireState::up(x), WireState::down(x)] {
            let v = evaluate_closed(c, &loop_word(w)).ok();
            rep.check("loop", v.as_ref() == Some(c.qdim(x)), || format!("{w:?}"));
            let s = DiagramState::basis(c, vec![w, w.rev()], vec![UNIT, w.object(c), UNIT]);
            for snake in [
                vec![Gate::Cup { pos: 1, wire: w.rev() }, Gate::Cap { pos: 0 }],
                vec![Gate::Cup { pos: 0, wire: w }, Gate::Cap { pos: 1 }],
            ] {
                let t = apply_word(c, &s, &snake).ok();
                rep.check("snake", t.as_ref() == Some(&s), || format!("{w:?} {snake:?}"));
            }
        }
        if let Some(theta) = c.twist(x) {
            let pos = twist_from_kink(c, x, true).ok();
            rep.check("kink", pos.as_ref() == Some(theta), || format!("+ on {x}"));
            let neg = twist_from_kink(c, x, false).ok();
            let inv: Option<Scalar> = theta.inverse().ok();
            rep.check("kink", neg == inv, || format!("- on {x}"));
        }
    }
}
