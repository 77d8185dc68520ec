//! The end-to-end pipeline: classify which hypothesis holds, choose the
//! group in which to run the transfer, certify `Z(S) = W_G(S) × ker(tr)`,
//! and fall back to a complement scan when no hypothesis applies.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::GroupFile;
use crate::error::{Error, Result};
use crate::fusion::{analyze_zf, FusionContext};
use crate::group::{derived_series, normalizer, prime_divisors, quotient, subgroup_intersection, PermGroup};
use crate::perm::Permutation;
use crate::report::ReportRecord;
use crate::structure::{
    abelian_decomp, center, commutator_with, complement_search, is_sylow, radical_series, sylow, thompson,
    AbelianDecomp, Complement, RadicalSeries,
};
use crate::transfer::{split_via_transfer, SplitWitness};
use crate::weak_closure::weakly_closed_subgroup;

/// Which hypothesis of the splitting theorem holds, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "sylow_normal")]
    SylowNormal,
    #[serde(rename = "solvable")]
    Solvable,
    /// `Z(S) ≤ O_{p',p}(G)`.
    #[serde(rename = "z_in_o22")]
    ZInO22,
    #[serde(rename = "odd_p")]
    OddP,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Counterexample,
    HypothesisNotSatisfied,
    Error,
}

impl Verdict {
    /// Severity for combining verdicts and choosing exit codes.
    pub fn severity(self) -> u8 {
        match self {
            Verdict::Verified => 0,
            Verdict::HypothesisNotSatisfied => 1,
            Verdict::Counterexample => 2,
            Verdict::Error => 3,
        }
    }

    pub fn worst(self, other: Verdict) -> Verdict {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

/// The group (or object) in which the transfer is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChosenH {
    /// `H = G`.
    WholeGroup,
    /// `H = N_G(J(S))`.
    ThompsonNormalizer,
    /// `Aut_F(Q)` on `Q = O_p(F)`.
    FusionCore,
    /// `Aut_F(J(S))` inside `N_F(J(S))`.
    FusionThompson,
    /// No hypothesis holds; only the complement scan was run.
    Diagnostic,
}

macro_rules! snake_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s = serde_json::to_string(self).map_err(|_| fmt::Error)?;
                f.write_str(s.trim_matches('"'))
            }
        }
    )*};
}
snake_display!(CaseTag, Verdict, ChosenH);

/// `G`, a prime, a Sylow subgroup and its center, with the radical series
/// and `W_G(S)` computed on first use.
#[derive(Debug)]
pub struct SylowSetup {
    pub g: PermGroup,
    pub p: u64,
    pub s: PermGroup,
    pub zs: PermGroup,
    radicals: OnceLock<RadicalSeries>,
    w: OnceLock<PermGroup>,
}

impl SylowSetup {
    pub fn new(g: PermGroup, p: u64) -> Result<Self> {
        let s = sylow(&g, p)?;
        Ok(Self::build(g, s, p))
    }

    pub fn with_sylow(g: PermGroup, s: PermGroup, p: u64) -> Result<Self> {
        if !is_sylow(&s, &g, p) {
            return Err(Error::InvalidArgument(format!(
                "subgroup of order {} is not a Sylow {p}-subgroup of a group of order {}",
                s.order(),
                g.order()
            )));
        }
        Ok(Self::build(g, s, p))
    }

    fn build(g: PermGroup, s: PermGroup, p: u64) -> Self {
        let zs = center(&s);
        SylowSetup {
            g,
            p,
            s,
            zs,
            radicals: OnceLock::new(),
            w: OnceLock::new(),
        }
    }

    pub fn radicals(&self) -> Result<&RadicalSeries> {
        if let Some(r) = self.radicals.get() {
            return Ok(r);
        }
        let r = radical_series(&self.g, self.p)?;
        Ok(self.radicals.get_or_init(|| r))
    }

    /// `W_G(S)`.
    pub fn w(&self) -> Result<&PermGroup> {
        if let Some(w) = self.w.get() {
            return Ok(w);
        }
        let w = weakly_closed_subgroup(&self.g, &self.s)?;
        Ok(self.w.get_or_init(|| w))
    }
}

/// Classifies `(G, p)` in the fixed order
/// `sylow_normal > solvable > z_in_o22 > odd_p > none`.
///
/// `z_in_o22` is tested as `Z(S) ≤ O_{p',p}(G)` for every prime. Both
/// `sylow_normal` and `solvable` imply it, and that is checked as well.
pub fn classify_case(setup: &SylowSetup) -> Result<CaseTag> {
    let z_in = setup.zs.is_subgroup_of(&setup.radicals()?.o_p_prime_p);
    if setup.s.is_normal_in(&setup.g) {
        if !z_in {
            return Err(Error::internal("S is normal but Z(S) is not in O_{p',p}(G)"));
        }
        return Ok(CaseTag::SylowNormal);
    }
    if derived_series(&setup.g)?.solvable {
        if !z_in {
            return Err(Error::internal("G is solvable but Z(S) is not in O_{p',p}(G)"));
        }
        return Ok(CaseTag::Solvable);
    }
    Ok(if z_in {
        CaseTag::ZInO22
    } else if setup.p % 2 == 1 {
        CaseTag::OddP
    } else {
        CaseTag::None
    })
}

/// Outcome of one splitting analysis, group-side or fusion-side.
#[derive(Clone, Debug)]
pub struct SplitReport {
    pub name: String,
    pub p: u64,
    pub case: CaseTag,
    pub chosen_h: ChosenH,
    pub zs: PermGroup,
    /// `W_G(S)`, or `Z(F)` for fusion reports.
    pub w: PermGroup,
    pub witness: Option<SplitWitness>,
    /// Complement scan, run when no hypothesis holds or a certificate fails.
    pub complement: Option<Complement>,
    pub zs_type: AbelianDecomp,
    pub w_type: AbelianDecomp,
    pub kernel_type: Option<AbelianDecomp>,
    pub verdict: Verdict,
}

impl SplitReport {
    pub(crate) fn from_witness(
        name: &str,
        p: u64,
        case: CaseTag,
        chosen_h: ChosenH,
        witness: SplitWitness,
    ) -> Result<SplitReport> {
        let zs_type = abelian_decomp(&witness.zs)?;
        let w_type = abelian_decomp(&witness.w)?;
        let kernel_type = Some(abelian_decomp(&witness.kernel)?);
        let (verdict, complement) = if witness.holds() {
            (Verdict::Verified, None)
        } else {
            // a failed certificate under the hypotheses: decide splitting directly
            match complement_search(&witness.zs, &witness.w)? {
                c @ Complement::Refuted(_) => (Verdict::Counterexample, Some(c)),
                Complement::Found(_) => {
                    return Err(Error::internal(format!(
                        "{name}, p = {p}: transfer certificate failed although Z(S) splits over W"
                    )))
                }
            }
        };
        Ok(SplitReport {
            name: name.to_string(),
            p,
            case,
            chosen_h,
            zs: witness.zs.clone(),
            w: witness.w.clone(),
            witness: Some(witness),
            complement,
            zs_type,
            w_type,
            kernel_type,
            verdict,
        })
    }

    /// Report for a `(G, p)` outside the hypotheses: does `Z(S)` split over `w` anyway?
    pub(crate) fn diagnostic(name: &str, p: u64, case: CaseTag, zs: &PermGroup, w: &PermGroup) -> Result<SplitReport> {
        let complement = complement_search(zs, w)?;
        let (verdict, kernel_type) = match &complement {
            Complement::Found(b) => (Verdict::HypothesisNotSatisfied, Some(abelian_decomp(b)?)),
            Complement::Refuted(_) => (Verdict::Counterexample, None),
        };
        Ok(SplitReport {
            name: name.to_string(),
            p,
            case,
            chosen_h: ChosenH::Diagnostic,
            zs: zs.clone(),
            w: w.clone(),
            witness: None,
            complement: Some(complement),
            zs_type: abelian_decomp(zs)?,
            w_type: abelian_decomp(w)?,
            kernel_type,
            verdict,
        })
    }
}

/// Certifies the splitting for a `(G, p)` satisfying one of the hypotheses.
///
/// With `H = G` in the `sylow_normal`, `solvable` and `z_in_o22` cases, and
/// `H = N_G(J(S))` for odd `p`, after checking
/// `Z(S) ≤ Z(J(S)) ≤ J(S) ≤ O_{p',p}(H)` and `W_G(S) = W_H(S)`.
pub fn verify_wgs(name: &str, setup: &SylowSetup) -> Result<SplitReport> {
    let case = classify_case(setup)?;
    let (g, s, p) = (&setup.g, &setup.s, setup.p);
    match case {
        CaseTag::None => Err(Error::HypothesisNotSatisfied(format!(
            "{name}, p = {p}: p is even, G is not solvable and Z(S) is not in O_{{{p}',{p}}}(G)"
        ))),
        CaseTag::OddP => {
            let j = thompson(s)?.j;
            let h = normalizer(g, &j);
            let zj = center(&j);
            let o = radical_series(&h, p)?.o_p_prime_p;
            if !(setup.zs.is_subgroup_of(&zj) && j.is_subgroup_of(&o)) {
                return Err(Error::internal(format!(
                    "{name}, p = {p}: containment Z(S) ≤ ZJ(S) ≤ J(S) ≤ O_{{p',p}}(N_G(J(S))) fails"
                )));
            }
            let witness = split_via_transfer(&h, s, p)?;
            if &witness.w != setup.w()? {
                return Err(Error::internal(format!(
                    "{name}, p = {p}: W_G(S) has order {} but W_H(S) has order {}",
                    setup.w()?.order(),
                    witness.w.order()
                )));
            }
            SplitReport::from_witness(name, p, case, ChosenH::ThompsonNormalizer, witness)
        }
        _ => {
            let witness = split_via_transfer(g, s, p)?;
            SplitReport::from_witness(name, p, case, ChosenH::WholeGroup, witness)
        }
    }
}

/// [`verify_wgs`], falling back to the complement scan when no hypothesis holds.
pub fn analyze_wgs(name: &str, setup: &SylowSetup) -> Result<SplitReport> {
    match verify_wgs(name, setup) {
        Err(Error::HypothesisNotSatisfied(_)) => {
            SplitReport::diagnostic(name, setup.p, CaseTag::None, &setup.zs, setup.w()?)
        }
        other => other,
    }
}

/// `Z(S) = (Z(S) ∩ Z(G)) × [Z(S), G]` for normal `S`.
#[derive(Clone, Debug)]
pub struct NormalSylowReport {
    pub central: PermGroup,
    pub commutator: PermGroup,
    pub product_ok: bool,
    pub intersection_trivial: bool,
    /// `W_G(S) = Z(S) ∩ Z(G)`.
    pub w_matches: bool,
}

impl NormalSylowReport {
    pub fn holds(&self) -> bool {
        self.product_ok && self.intersection_trivial && self.w_matches
    }
}

pub fn verify_normal_sylow(setup: &SylowSetup) -> Result<NormalSylowReport> {
    if !setup.s.is_normal_in(&setup.g) {
        return Err(Error::NotNormal("the Sylow subgroup is not normal".into()));
    }
    let zs = &setup.zs;
    let central = subgroup_intersection(zs, &center(&setup.g))?;
    let commutator = commutator_with(zs, &setup.g)?;
    let intersection_trivial = subgroup_intersection(&central, &commutator)?.is_trivial();
    let product_ok = commutator.is_subgroup_of(zs) && central.join(&commutator)?.order() == zs.order();
    let w_matches = setup.w()? == &central;
    Ok(NormalSylowReport {
        central,
        commutator,
        product_ok,
        intersection_trivial,
        w_matches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckOutcome {
            name,
            status: if passed { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        }
    }

    fn skipped(name: &'static str, detail: &str) -> Self {
        CheckOutcome {
            name,
            status: CheckStatus::Skipped,
            detail: detail.to_string(),
        }
    }
}

pub const CHECK_ZP_STAR: &str = "zp_star";
pub const CHECK_CONTROL: &str = "control";
pub const CHECK_QUOTIENT: &str = "quotient";
pub const CHECK_NORMAL_SYLOW: &str = "normal_sylow";

/// Independent identities around `W_G(S)`:
/// `zp_star`: `W_G(S) = Z(S) ∩ Z_p^*(G)`;
/// `control` (odd `p`): `W_G(S) = W_H(S) = O_p(Z(H))` for `H = N_G(J(S))`;
/// `quotient`: `z ↦ zO_{p'}(G)` maps `Z(S)` bijectively onto `Z(S̄)` and `W` onto `W`;
/// `normal_sylow` (normal `S`): the coprime-action splitting.
pub fn cross_checks(setup: &SylowSetup) -> Result<Vec<CheckOutcome>> {
    let (g, s, p) = (&setup.g, &setup.s, setup.p);
    let w = setup.w()?;
    let radicals = setup.radicals()?;
    let mut out = Vec::new();

    let rhs = subgroup_intersection(&setup.zs, &radicals.z_p_star)?;
    out.push(CheckOutcome::new(
        CHECK_ZP_STAR,
        &rhs == w,
        format!("|W_G(S)| = {}, |Z(S) ∩ Z_p*(G)| = {}", w.order(), rhs.order()),
    ));

    if p % 2 == 1 {
        let j = thompson(s)?.j;
        let h = normalizer(g, &j);
        let wh = weakly_closed_subgroup(&h, s)?;
        let zh = center(&h);
        let op_zh = sylow(&zh, p)?;
        out.push(CheckOutcome::new(
            CHECK_CONTROL,
            &wh == w && op_zh == wh,
            format!(
                "|W_G(S)| = {}, |W_H(S)| = {}, |O_p(Z(H))| = {}, |H| = {}",
                w.order(),
                wh.order(),
                op_zh.order(),
                h.order()
            ),
        ));
    } else {
        out.push(CheckOutcome::skipped(CHECK_CONTROL, "p = 2"));
    }

    out.push(quotient_check(setup)?);

    if s.is_normal_in(g) {
        let r = verify_normal_sylow(setup)?;
        out.push(CheckOutcome::new(
            CHECK_NORMAL_SYLOW,
            r.holds(),
            format!(
                "|Z(S) ∩ Z(G)| = {}, |[Z(S), G]| = {}",
                r.central.order(),
                r.commutator.order()
            ),
        ));
    } else {
        out.push(CheckOutcome::skipped(CHECK_NORMAL_SYLOW, "S is not normal"));
    }
    Ok(out)
}

fn quotient_check(setup: &SylowSetup) -> Result<CheckOutcome> {
    let n = &setup.radicals()?.o_p_prime;
    if n.is_trivial() {
        return Ok(CheckOutcome::new(CHECK_QUOTIENT, true, "vacuous: O_p'(G) = 1".into()));
    }
    let q = quotient(&setup.g, n)?;
    let s_bar = q.map_subgroup(&setup.s)?;
    let z_bar = center(&s_bar);
    let w_bar = weakly_closed_subgroup(q.image(), &s_bar)?;
    let images: Vec<Permutation> = setup.zs.sorted_elements().iter().map(|z| q.map(z)).collect();
    let distinct: std::collections::HashSet<&Permutation> = images.iter().collect();
    let bijective = distinct.len() as u64 == setup.zs.order()
        && z_bar.order() == setup.zs.order()
        && images.iter().all(|y| z_bar.contains(y));
    let w = setup.w()?;
    let w_images: Vec<Permutation> = w.sorted_elements().iter().map(|x| q.map(x)).collect();
    let w_onto = w_bar.order() == w.order() && w_images.iter().all(|y| w_bar.contains(y));
    Ok(CheckOutcome::new(
        CHECK_QUOTIENT,
        bijective && w_onto,
        format!(
            "|O_p'(G)| = {}, |Z(S̄)| = {}, |W̄| = {}",
            n.order(),
            z_bar.order(),
            w_bar.order()
        ),
    ))
}

pub const A6_EXAMPLE_DEGREE: usize = 10;
/// `A6 = ⟨(1,2,3,4,5), (4,5,6)⟩` extended by `a = (5,6)(7,8,9,10)`.
pub const A6_EXAMPLE_GENERATORS: [&str; 3] = ["(1,2,3,4,5)", "(4,5,6)", "(5,6)(7,8,9,10)"];
pub const A6_EXAMPLE_SYLOW: [&str; 3] = ["(1,3)(2,4)", "(1,2)(5,6)", "(5,6)(7,8,9,10)"];
pub const A6_EXAMPLE_NAME: &str = "a6-c4-example";

#[derive(Debug)]
pub struct A6Example {
    pub setup: SylowSetup,
    pub report: SplitReport,
}

/// `G = A6⟨a⟩` of order 1440 at `p = 2`, where `Z(S) ≅ C2 × C4` does not
/// split over `W_G(S) = ⟨a²⟩`.
pub fn build_a6_example() -> Result<A6Example> {
    let g = PermGroup::from_cycles(A6_EXAMPLE_DEGREE, &A6_EXAMPLE_GENERATORS)?;
    let s = PermGroup::from_cycles(A6_EXAMPLE_DEGREE, &A6_EXAMPLE_SYLOW)?;
    let a = Permutation::parse_cycles(A6_EXAMPLE_GENERATORS[2], A6_EXAMPLE_DEGREE)?;
    let a2 = a.pow(2);
    let fail = |what: &str| Error::internal(format!("A6 example: {what}"));
    if g.order() != 1440 {
        return Err(fail(&format!("|G| = {}", g.order())));
    }
    if a.order() != 4 || !g.generators().iter().all(|x| x.commutes_with(&a2)) {
        return Err(fail("a does not have order 4 with a² central"));
    }
    if s.order() != 32 {
        return Err(fail(&format!("|S| = {}", s.order())));
    }
    let setup = SylowSetup::with_sylow(g, s, 2)?;
    let report = analyze_wgs(A6_EXAMPLE_NAME, &setup)?;
    if report.zs_type.invariant_factors != [2, 4] {
        return Err(fail(&format!("Z(S) has invariant factors {:?}", report.zs_type.invariant_factors)));
    }
    if report.w.order() != 2 || !report.w.contains(&a2) {
        return Err(fail("W_G(S) is not ⟨a²⟩"));
    }
    if report.verdict != Verdict::Counterexample {
        return Err(fail(&format!("verdict {}", report.verdict)));
    }
    Ok(A6Example { setup, report })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Wgs,
    Zf,
    All,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "wgs" => Ok(Mode::Wgs),
            "zf" => Ok(Mode::Zf),
            "all" => Ok(Mode::All),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}` (expected wgs, zf or all)"))),
        }
    }
}

snake_display!(Mode);

/// Primes to analyze per group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSelection {
    /// Every prime dividing `|G|`.
    All,
    List(Vec<u64>),
}

impl PrimeSelection {
    pub fn primes_for(&self, order: u64) -> Vec<u64> {
        let divisors = prime_divisors(order);
        match self {
            PrimeSelection::All => divisors,
            PrimeSelection::List(ps) => {
                let mut out: Vec<u64> = ps.iter().copied().filter(|p| divisors.contains(p)).collect();
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }
}

/// Runs the requested analyses and cross-checks for one `(G, p)`. Errors
/// are recorded in the returned record rather than propagated.
pub fn analyze_entry(name: &str, g: &PermGroup, p: u64, mode: Mode, timing: bool) -> ReportRecord {
    let start = Instant::now();
    let result = SylowSetup::new(g.clone(), p).and_then(|setup| run_entry(name, &setup, mode));
    finish_record(name, p, mode, result, timing.then_some(start))
}

/// [`analyze_entry`] for a prepared setup, keeping its Sylow subgroup.
pub fn analyze_setup(name: &str, setup: &SylowSetup, mode: Mode, timing: bool) -> ReportRecord {
    let start = Instant::now();
    let result = run_entry(name, setup, mode);
    finish_record(name, setup.p, mode, result, timing.then_some(start))
}

fn finish_record(name: &str, p: u64, mode: Mode, result: Result<ReportRecord>, start: Option<Instant>) -> ReportRecord {
    let mut record = match result {
        Ok(r) => r,
        Err(e) => ReportRecord::error(name, p, mode, e.to_string()),
    };
    if let Some(start) = start {
        record.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    record
}

fn run_entry(name: &str, setup: &SylowSetup, mode: Mode) -> Result<ReportRecord> {
    let p = setup.p;
    let wgs = match mode {
        Mode::Wgs | Mode::All => Some(analyze_wgs(name, setup)?),
        Mode::Zf => None,
    };
    let zf = match mode {
        Mode::Zf | Mode::All => {
            let ctx = FusionContext::with_sylow(setup.g.clone(), setup.s.clone(), p)?;
            Some(analyze_zf(name, &ctx)?)
        }
        Mode::Wgs => None,
    };
    let checks = cross_checks(setup)?;
    let case = classify_case(setup)?;
    Ok(ReportRecord::from_reports(name, p, mode, case, wgs.as_ref(), zf.as_ref(), &checks))
}

/// Analyzes every `(G, p)` of the catalog with `p` selected by `primes`,
/// using up to `jobs` threads. Records come back ordered by `(name, p)`.
pub fn scan_catalog(
    catalog: &[GroupFile],
    primes: &PrimeSelection,
    mode: Mode,
    jobs: Option<usize>,
    timing: bool,
) -> Result<Vec<ReportRecord>> {
    let mut tasks: Vec<(&str, PermGroup, u64)> = Vec::new();
    let mut failed: Vec<ReportRecord> = Vec::new();
    for entry in catalog {
        match entry.to_group() {
            Ok(g) => {
                for p in primes.primes_for(g.order()) {
                    tasks.push((&entry.name, g.clone(), p));
                }
            }
            Err(e) => failed.push(ReportRecord::error(&entry.name, 0, mode, e.to_string())),
        }
    }
    let run = || -> Vec<ReportRecord> {
        tasks
            .par_iter()
            .map(|(name, g, p)| analyze_entry(name, g, *p, mode, timing))
            .collect()
    };
    let mut records = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    records.extend(failed);
    records.sort_by(|a, b| a.group.cmp(&b.group).then(a.prime.cmp(&b.prime)));
    Ok(records)
}

/// Tally of verdicts across records.
pub fn verdict_counts(records: &[ReportRecord]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.verdict.to_string()).or_insert(0) += 1;
    }
    out
}
