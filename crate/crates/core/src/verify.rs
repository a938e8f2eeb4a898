//! The identity suite run by `ztorsion verify`.

use std::fmt;

use num_bigint::BigInt;

use crate::facering::{component_hilbert, f_vector, h_from_f, verify_main_theorem};
use crate::poset::SimplicialCheck;
use crate::torsion_poset::{build_poset, verify_point_decomposition, TorsionPoset};
use crate::zmatroid::Realization;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name, passed, detail: detail.into() }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Fault injection for negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Remove the last cover of the poset before checking it.
    pub corrupt_drop_cover: bool,
}

/// Runs every check on `r`.
pub fn verify_realization(r: &Realization, options: VerifyOptions) -> VerificationReport {
    let mut gr = build_poset(r);
    if options.corrupt_drop_cover {
        let mut covers = gr.covers().to_vec();
        covers.pop();
        gr = TorsionPoset::from_parts(gr.elements().to_vec(), covers).expect("dropping a cover keeps rank steps");
    }
    let mut report = VerificationReport::default();
    report.checks.extend(poset_checks(r, &gr));
    report.checks.extend(realization_checks(r));
    report
}

/// Checks that only look at `Gr(M)`.
pub fn poset_checks(r: &Realization, gr: &TorsionPoset) -> Vec<CheckResult> {
    let p = gr.poset();
    let mut out = Vec::new();

    let bad_cover = (0..gr.len()).find(|&x| {
        let mut dropped: Vec<u64> = p
            .lower_covers(x)
            .iter()
            .map(|&c| gr.element(x).subset.0 & !gr.element(c).subset.0)
            .collect();
        dropped.sort_unstable();
        dropped.dedup();
        p.lower_covers(x).len() != p.rank(x) || dropped.len() != p.rank(x) || dropped.iter().any(|d| d.count_ones() != 1)
    });
    out.push(CheckResult::new(
        "covers",
        bad_cover.is_none(),
        match bad_cover {
            None => format!("every rank-k element covers k elements ({} covers)", gr.covers().len()),
            Some(x) => format!("element {x} {} covers {} elements", gr.element(x), p.lower_covers(x).len()),
        },
    ));

    let components = gr.components();
    let mut simplicial = Ok(());
    for comp in &components {
        match p.check_simplicial(comp) {
            Ok(SimplicialCheck::Simplicial) => {}
            Ok(SimplicialCheck::NotSimplicial { bottom, top }) => {
                simplicial = Err(format!("interval [{bottom}, {top}] is not boolean"));
                break;
            }
            Err(e) => {
                simplicial = Err(e.to_string());
                break;
            }
        }
    }
    if simplicial.is_ok() && !gr.lower_intervals_match_subsets() {
        simplicial = Err("a lower interval does not match the subsets of its top".into());
    }
    out.push(match simplicial {
        Ok(()) => CheckResult::new("simplicial", true, format!("{} components", components.len())),
        Err(e) => CheckResult::new("simplicial", false, e),
    });

    let m0 = r.initial_multiplicity();
    let one_bottom_each = components
        .iter()
        .all(|c| c.iter().filter(|&&x| gr.element(x).subset.is_empty()).count() == 1);
    out.push(CheckResult::new(
        "component-count",
        BigInt::from(components.len()) == m0 && one_bottom_each,
        format!("{} components, m(∅)={m0}", components.len()),
    ));

    let iso = gr.trivial_bottom().is_some_and(|b| {
        let reference = p.link(b).0;
        components.iter().all(|c| p.induced(c).isomorphism(&reference).is_some())
    });
    out.push(CheckResult::new("components-isomorphic", iso, "each component ≅ link of (∅, e)"));

    let counts = p.rank_counts(&(0..gr.len()).collect::<Vec<_>>());
    let mut expected: Vec<BigInt> = vec![BigInt::from(0); counts.len().max(r.rank() + 1)];
    for prof in r.profiles().iter().filter(|x| x.independent) {
        expected[prof.subset.len()] += &prof.multiplicity;
    }
    let got: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
    let fv_ok = got.len() == expected.len() && got == expected;
    out.push(CheckResult::new(
        "f-vector",
        fv_ok,
        format!("rank counts {:?} vs multiplicity sums {:?}", show(&got), show(&expected)),
    ));

    let mut oracle = Ok(String::new());
    for comp in &components {
        match component_hilbert(p, comp) {
            Ok(s) => oracle = Ok(s.to_string()),
            Err(e) => {
                oracle = Err(e.to_string());
                break;
            }
        }
    }
    out.push(match oracle {
        Ok(s) => CheckResult::new("chain-oracle", true, format!("component series {s}")),
        Err(e) => CheckResult::new("chain-oracle", false, e),
    });

    let h_ok = components.iter().all(|c| h_from_f(&f_vector(p, c)).is_nonnegative());
    out.push(CheckResult::new("h-vector", h_ok, "h-vectors nonnegative"));
    out
}

fn show(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Checks on the realization itself: Tutte identities and the main theorem.
pub fn realization_checks(r: &Realization) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let tutte = r.arithmetic_tutte();

    out.push(match verify_main_theorem(r) {
        Ok(rep) => CheckResult::new("main-theorem", rep.holds, rep.to_string()),
        Err(e) => CheckResult::new("main-theorem", false, e.to_string()),
    });

    if r.initial_structure().is_free() {
        out.push(match r.dual() {
            Ok(d) => {
                let dual_t = d.arithmetic_tutte();
                let mut ok = dual_t == tutte.swap_xy();
                // the double dual exists only when M*(∅) is free as well
                if d.initial_structure().is_free() {
                    ok &= d.dual().is_ok_and(|dd| dd.arithmetic_tutte() == tutte);
                }
                CheckResult::new("duality", ok, format!("T_M* = {dual_t}"))
            }
            Err(e) => CheckResult::new("duality", false, e.to_string()),
        });
    } else {
        out.push(CheckResult::new("duality", true, "skipped: M(∅) has torsion"));
    }

    let pd = verify_point_decomposition(r);
    let parts: Vec<String> = pd.points.iter().map(|(_, _, p)| format!("({})", p.display_in("y"))).collect();
    out.push(CheckResult::new(
        "point-decomposition",
        pd.holds,
        format!("{} = {}", pd.tutte_at_x_one.display_in("y"), parts.join(" + ")),
    ));

    out.push(if r.initial_structure().is_free() {
        match r.grothendieck_class() {
            Ok(gt) => {
                let ev = gt.evaluate();
                CheckResult::new("grothendieck-class", ev == tutte, format!("evaluation {ev}"))
            }
            Err(e) => CheckResult::new("grothendieck-class", false, e.to_string()),
        }
    } else {
        CheckResult::new("grothendieck-class", true, "skipped: M(∅) has torsion")
    });
    out
}
