//! Running analyses over a parsed document and collecting a [`ResultBundle`].

use std::time::{Duration, Instant};

use mgfilt_core::filtration::Filtration;
use mgfilt_core::hilbert::{
    defect_table, fit_polynomial, leading_coefficient_identity, vanishing_region,
    verify_vanishing_theorem, FitOptions, FittedPoly, HilbertPoly,
};
use mgfilt_core::ideal::Monomial;
use mgfilt_core::index::{cube, MultiIndex};
use mgfilt_core::km::{euler_characteristic_check, h1_vanishing_on_box, h2_vanishing, huneke_identity_on};
use mgfilt_core::postulation::{
    negative_postulation_vectors, postulation_region, verify_dim1_correspondence,
    verify_dim2_bijection, verify_dim2_equivalences, DimTwoConditions,
};
use mgfilt_core::reduction::{
    complete_reduction_number, induced_reductions_check, is_good, joint_reduction_number_zero,
    search_all_reductions, single_graded_reduction_number, CompleteReduction, JointReduction, Window,
};
use mgfilt_core::region::Region;
use mgfilt_core::report::{TheoremReport, Verdict};
use serde::{Deserialize, Serialize};

use crate::error::{Context, Result};
use crate::spec::{Command, Settings, SpecDocument};

/// Searched reductions kept in addition to the ones given in the document.
const SEARCH_CAP: usize = 3;
/// Depth below zero scanned for non-positive postulation vectors.
const NEGATIVE_DEPTH: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub alpha: Vec<u32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialTable {
    pub degree: u32,
    /// `e = {...}` rendering of the coefficients.
    pub display: String,
    pub coefficients: Vec<Coefficient>,
    pub base_offset: i64,
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub n: MultiIndex,
    pub h: String,
    pub p: String,
    pub defect: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedRegion {
    pub name: String,
    pub region: Region,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionEntry {
    pub name: String,
    /// `document` or `search`.
    pub source: String,
    pub display: String,
    pub reduction_number: Option<i64>,
    pub good: bool,
    pub certificate: Region,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueAt {
    pub n: MultiIndex,
    pub value: String,
}

/// Wall-clock time per pipeline stage. Never serialized and ignored by
/// equality, so bundles stay deterministic.
#[derive(Clone, Debug, Default)]
pub struct Timings(pub Vec<(String, Duration)>);

impl PartialEq for Timings {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

/// Everything a run produced. All numbers are exact; big integers are
/// carried as decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub ring: String,
    pub filtration: String,
    pub dimension: u32,
    pub cohen_macaulay: bool,
    pub settings: Settings,
    pub commands: Vec<Command>,
    pub polynomial: Option<PolynomialTable>,
    pub hilbert_table: Vec<HilbertRow>,
    pub regions: Vec<NamedRegion>,
    pub reductions: Vec<ReductionEntry>,
    /// Points of the box where `H^1` of the Rees algebra is nonzero.
    pub h1_nonzero: Vec<ValueAt>,
    pub conditions: Option<DimTwoConditions>,
    pub reports: Vec<TheoremReport>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub timings: Timings,
}

impl ResultBundle {
    /// True when no analysis produced any output.
    pub fn is_empty(&self) -> bool {
        self.polynomial.is_none()
            && self.hilbert_table.is_empty()
            && self.regions.is_empty()
            && self.reductions.is_empty()
            && self.h1_nonzero.is_empty()
            && self.conditions.is_none()
            && self.reports.is_empty()
            && self.notes.is_empty()
    }

    pub fn region(&self, name: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.name == name).map(|r| &r.region)
    }

    pub fn report(&self, theorem: &str) -> Option<&TheoremReport> {
        self.reports.iter().find(|r| r.theorem == theorem)
    }

    /// 3 if any report is inconsistent, 2 if there are reports and none of
    /// them applied, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.verdict == Verdict::Inconsistent) {
            3
        } else if !self.reports.is_empty()
            && self.reports.iter().all(|r| r.verdict == Verdict::NotApplicable)
        {
            2
        } else {
            0
        }
    }
}

struct Run<'a> {
    doc: &'a SpecDocument,
    f: Filtration,
    settings: Settings,
    window: Window,
    fitted: Option<FittedPoly>,
    reductions: Option<Vec<(String, String, CompleteReduction)>>,
    bundle: ResultBundle,
}

/// Run `commands` (the document's own list when `None`) with `settings`.
pub fn run(doc: &SpecDocument, commands: Option<&[Command]>, settings: Settings) -> Result<ResultBundle> {
    let commands: Vec<Command> = commands.map_or_else(|| doc.commands.clone(), <[Command]>::to_vec);
    let f = doc.filtration();
    let bundle = ResultBundle {
        ring: doc.ring_description(),
        filtration: doc.filtration_description(),
        dimension: doc.ring.dimension(),
        cohen_macaulay: doc.ring.is_cohen_macaulay(),
        settings,
        commands: commands.clone(),
        polynomial: None,
        hilbert_table: Vec::new(),
        regions: Vec::new(),
        reductions: Vec::new(),
        h1_nonzero: Vec::new(),
        conditions: None,
        reports: Vec::new(),
        notes: Vec::new(),
        timings: Timings::default(),
    };
    let mut run = Run {
        doc,
        f,
        settings,
        window: Window::new(settings.box_size, settings.margin),
        fitted: None,
        reductions: None,
        bundle,
    };
    let expanded: Vec<Command> = if commands.contains(&Command::VerifyAll) {
        vec![
            Command::Hilbert,
            Command::Reductions,
            Command::Postulation,
            Command::Huneke,
            Command::H1,
            Command::VerifyAll,
        ]
    } else {
        let mut c = commands;
        c.sort();
        c
    };
    for c in expanded {
        let start = Instant::now();
        match c {
            Command::Hilbert => run.hilbert()?,
            Command::Reductions => run.reduction_summary()?,
            Command::Postulation => run.postulation()?,
            Command::Huneke => run.huneke()?,
            Command::H1 => run.h1()?,
            Command::VerifyAll => run.theorems()?,
        }
        run.bundle.timings.0.push((c.name().to_string(), start.elapsed()));
    }
    Ok(run.bundle)
}

/// Equal matrices up to the order of entries within each row.
fn same_rows(a: &[Vec<Monomial>], b: &[Vec<Monomial>]) -> bool {
    let sorted = |m: &[Vec<Monomial>]| -> Vec<Vec<Monomial>> {
        m.iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort();
                r
            })
            .collect()
    };
    sorted(a) == sorted(b)
}

impl Run<'_> {
    fn s(&self) -> usize {
        self.f.arity()
    }

    fn d(&self) -> u32 {
        self.f.dimension()
    }

    fn poly(&mut self) -> Result<HilbertPoly> {
        if self.fitted.is_none() {
            let opts = FitOptions {
                base_offset: self.settings.base_offset,
                ..FitOptions::default()
            };
            let d = self.d();
            let fit = fit_polynomial(&self.f, d, opts).context(|| "fitting the Hilbert polynomial".into())?;
            self.bundle.polynomial = Some(PolynomialTable {
                degree: d,
                display: fit.poly.to_string(),
                coefficients: fit
                    .poly
                    .terms()
                    .into_iter()
                    .map(|(alpha, c)| Coefficient {
                        alpha,
                        value: c.to_string(),
                    })
                    .collect(),
                base_offset: fit.base_offset,
                attempts: fit.attempts,
            });
            self.fitted = Some(fit);
        }
        Ok(self.fitted.as_ref().expect("fitted above").poly.clone())
    }

    /// Document reductions first, then searched ones not already listed.
    fn reductions(&mut self) -> Result<Vec<(String, String, CompleteReduction)>> {
        if let Some(r) = &self.reductions {
            return Ok(r.clone());
        }
        let mut out: Vec<(String, String, CompleteReduction)> = Vec::new();
        for spec in &self.doc.reductions {
            let a = CompleteReduction::with_window(&self.f, spec.rows.clone(), self.window)
                .context(|| format!("reduction {} (line {})", spec.name, spec.line))?;
            out.push((spec.name.clone(), "document".into(), a));
        }
        let found = search_all_reductions(&self.f, self.settings.search_degree, SEARCH_CAP, self.window)
            .context(|| "searching monomial complete reductions".into())?;
        if found.is_empty() {
            self.bundle.notes.push(format!(
                "no monomial complete reduction with entries of degree <= {} on {}",
                self.settings.search_degree,
                self.window.describe(self.s())
            ));
        }
        let mut k = 0;
        for a in found {
            if out.iter().any(|(_, _, b)| same_rows(a.elements(), b.elements())) {
                continue;
            }
            k += 1;
            out.push((format!("search-{k}"), "search".into(), a));
        }
        self.reductions = Some(out.clone());
        Ok(out)
    }

    /// The first good reduction, or the first reduction if none is good.
    fn primary_reduction(&mut self) -> Result<Option<CompleteReduction>> {
        let all = self.reductions()?;
        for (_, _, a) in &all {
            if is_good(a, &self.f, self.window).context(|| format!("goodness of {}", a.display()))? {
                return Ok(Some(a.clone()));
            }
        }
        Ok(all.into_iter().next().map(|(_, _, a)| a))
    }

    fn hilbert(&mut self) -> Result<()> {
        let p = self.poly()?;
        let table = defect_table(&self.f, &p, self.settings.box_size)
            .context(|| "tabulating H and P".into())?;
        self.bundle.hilbert_table = table
            .into_iter()
            .map(|(n, defect)| {
                let pv = p.eval(&n);
                HilbertRow {
                    h: (&pv - &defect).to_string(),
                    p: pv.to_string(),
                    defect: defect.to_string(),
                    n,
                }
            })
            .collect();

        let rows = &self.bundle.hilbert_table;
        let lookup = |n: &MultiIndex| -> num_bigint::BigInt {
            if let Some(r) = rows.iter().find(|r| &r.n == n) {
                return r.defect.parse().expect("decimal string");
            }
            p.eval(n) - mgfilt_core::hilbert::hilbert_function(&self.f, n).expect("colengths are finite")
        };
        let mut report = TheoremReport::new("eventual vanishing of P - H");
        let (b, m) = (self.settings.box_size, self.settings.margin);
        let regions: Vec<Region> = (0..=2).map(|j| vanishing_region(lookup, self.s(), j, b, m)).collect();
        for (j, r) in regions.iter().enumerate().skip(1) {
            report.check(
                format!("C_{j} = C_0"),
                r.same_corners(&regions[0]),
                format!("C_{j} {} vs C_0 {}", r.corner_string(), regions[0].corner_string()),
            );
        }
        for (j, r) in regions.into_iter().enumerate() {
            self.bundle.regions.push(NamedRegion {
                name: format!("C_{j}"),
                region: r,
            });
        }
        self.bundle.reports.push(report);

        let opts = FitOptions {
            base_offset: self.settings.base_offset,
            ..FitOptions::default()
        };
        let lead = leading_coefficient_identity(&self.f, &p, opts)
            .context(|| "leading coefficient identities".into())?;
        self.bundle.reports.push(lead);
        Ok(())
    }

    fn reduction_summary(&mut self) -> Result<()> {
        let all = self.reductions()?;
        for (name, source, a) in &all {
            let r = complete_reduction_number(a, &self.f, self.window)
                .context(|| format!("reduction number of {}", a.display()))?;
            let good = is_good(a, &self.f, self.window).context(|| format!("goodness of {}", a.display()))?;
            self.bundle.reductions.push(ReductionEntry {
                name: name.clone(),
                source: source.clone(),
                display: a.display(),
                reduction_number: r,
                good,
                certificate: a.certificate().clone(),
            });
        }
        if let Some((_, _, a)) = all.first() {
            let (report, least) = induced_reductions_check(a, &self.f, self.settings.box_size.max(0) as u32)
                .context(|| "induced reductions".into())?;
            self.bundle.reports.push(report);
            let shown: Vec<String> = least
                .iter()
                .map(|v| v.map_or_else(|| "none".into(), |v| v.to_string()))
                .collect();
            self.bundle.notes.push(format!(
                "least n with J_i I_i^n = I_i^(n+1) for {}: [{}]",
                a.display(),
                shown.join(", ")
            ));
        }
        for i in 0..self.s() {
            let sr = single_graded_reduction_number(&self.f, i, self.settings.search_degree, self.window)
                .context(|| format!("reduction number of slice {}", i + 1))?;
            let ring = self.f.ring();
            self.bundle.notes.push(match (sr.number, &sr.reduction) {
                (Some(r), Some(g)) => {
                    let g: Vec<String> = g.iter().map(|m| ring.format_monomial(m)).collect();
                    format!("r(F^({})) = {r}, attained by ({})", i + 1, g.join(", "))
                }
                _ => format!("r(F^({})) not determined by monomial search", i + 1),
            });
        }
        if !self.doc.joint_reductions.is_empty() {
            let mut report = TheoremReport::new("joint reductions of reduction number zero");
            for spec in &self.doc.joint_reductions {
                let jr = JointReduction::new(&self.f, spec.type_vector.clone(), spec.rows.clone())
                    .context(|| format!("joint reduction {} (line {})", spec.name, spec.line))?;
                let zero = joint_reduction_number_zero(&jr, &self.f, self.settings.box_size)
                    .context(|| format!("joint reduction {}", spec.name))?;
                report.check(
                    format!("{} {} has reduction number zero", spec.name, jr.display()),
                    zero,
                    format!("box [0,{}]^{}", self.settings.box_size, self.s()),
                );
            }
            self.bundle.reports.push(report);
        }
        Ok(())
    }

    fn postulation(&mut self) -> Result<()> {
        let p = self.poly()?;
        let region = postulation_region(&self.f, &p, self.window).context(|| "postulation region".into())?;
        self.bundle.regions.push(NamedRegion {
            name: "P(F)".into(),
            region,
        });
        let negative = negative_postulation_vectors(&self.f, &p, NEGATIVE_DEPTH, self.window)
            .context(|| "non-positive postulation vectors".into())?;
        if !negative.is_empty() {
            let shown: Vec<String> = negative.iter().map(|n| n.to_string()).collect();
            self.bundle
                .notes
                .push(format!("postulation vectors outside N^s: {}", shown.join(", ")));
        }
        let all = self.reductions()?;
        for (name, _, a) in &all {
            self.bundle.regions.push(NamedRegion {
                name: format!("R_A {name}"),
                region: a.certificate().clone(),
            });
        }
        let Some(a) = self.primary_reduction()? else {
            return Ok(());
        };
        match self.d() {
            1 => {
                let alternatives: Vec<CompleteReduction> = all
                    .iter()
                    .map(|(_, _, b)| b.clone())
                    .filter(|b| b.display() != a.display())
                    .collect();
                let report = verify_dim1_correspondence(&self.f, &a, &p, &alternatives, self.window)
                    .context(|| "dimension one correspondence".into())?;
                self.bundle.reports.push(report);
            }
            _ => {
                let report = verify_dim2_bijection(&self.f, &a, &p, self.window)
                    .context(|| "dimension two bijection".into())?;
                self.bundle.reports.push(report);
                let reductions: Vec<CompleteReduction> = all.into_iter().map(|(_, _, b)| b).collect();
                let (report, cond) =
                    verify_dim2_equivalences(&self.f, &p, &reductions, self.settings.search_degree, self.window)
                        .context(|| "dimension two equivalences".into())?;
                self.bundle.reports.push(report);
                self.bundle.conditions = Some(cond);
            }
        }
        Ok(())
    }

    fn huneke(&mut self) -> Result<()> {
        let p = self.poly()?;
        let all = self.reductions()?;
        let points = cube(self.s(), 0, self.settings.box_size);
        for (name, _, a) in &all {
            let mut report = huneke_identity_on(&self.f, a, &p, &points)
                .context(|| format!("difference identity for {}", a.display()))?;
            report.theorem = format!("{} for {name} {}", report.theorem, a.display());
            self.bundle.reports.push(report);
        }
        if let Some((name, _, a)) = all.first() {
            let mut report = TheoremReport::new(format!("Euler characteristic for {name} {}", a.display()));
            for n in &points {
                let (lhs, rhs) = euler_characteristic_check(&self.f, a.y(), n)
                    .context(|| format!("Euler characteristic at {n}"))?;
                if lhs != rhs {
                    report.check(format!("at {n}"), false, format!("{lhs} vs {rhs}"));
                }
            }
            report.check(
                "Delta^k H = alternating sum of homology lengths",
                report.conclusions.is_empty(),
                format!("box [0,{}]^{}", self.settings.box_size, self.s()),
            );
            self.bundle.reports.push(report);
        }
        Ok(())
    }

    fn h1(&mut self) -> Result<()> {
        if self.d() != 2 || !self.f.ring().is_cohen_macaulay() {
            self.bundle
                .notes
                .push("H^1 scan skipped: it needs a Cohen-Macaulay ring of dimension 2".into());
            return Ok(());
        }
        let scan = h1_vanishing_on_box(&self.f, self.settings.box_size).context(|| "H^1 scan".into())?;
        self.bundle.notes.push(format!(
            "H^1 vanishes on box [0,{}]^{}: {}; zero propagates upward: {}",
            scan.box_size,
            self.s(),
            scan.vanishes(),
            scan.propagation_holds
        ));
        self.bundle.h1_nonzero = scan
            .nonzero
            .into_iter()
            .map(|(n, v)| ValueAt {
                n,
                value: v.to_string(),
            })
            .collect();
        Ok(())
    }

    fn theorems(&mut self) -> Result<()> {
        let p = self.poly()?;
        let report = verify_vanishing_theorem(&self.f, &p, self.settings.box_size)
            .context(|| "vanishing coefficient theorem".into())?;
        self.bundle.reports.push(report);
        if self.d() == 2 && self.f.ring().is_cohen_macaulay() {
            if let Some(a) = self.primary_reduction()? {
                let report = h2_vanishing(&self.f, &a, self.window)
                    .context(|| format!("H_2 vanishing for {}", a.display()))?;
                self.bundle.reports.push(report);
            }
        }
        Ok(())
    }
}
