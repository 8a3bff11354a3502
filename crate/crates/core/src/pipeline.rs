//! Commands over a parsed document, producing byte-stable reports.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::chern::{Chern, CyclicChain, IsoOutcome, Normalization};
use crate::cyclic::CyclicComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::format::{render_combo, AnyDocument, Document};
use crate::galois::{
    ConnectionSpace, Entwining, Extension, Flatness, LeftStructures, Principal, Side, StrongConnection,
};
use crate::linalg::{Matrix, VectorSpace};
use crate::structures::Corepresentation;
use crate::with_document;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unavailable,
}

impl Verdict {
    fn tag(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unavailable => "UNAVAILABLE",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    lines: Vec<String>,
    verdicts: Vec<(String, Verdict)>,
    /// Wall-clock time per step; never part of the rendered report.
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    fn check(&mut self, verdict: Verdict, name: &str, summary: impl AsRef<str>) {
        let summary = summary.as_ref();
        let line = if summary.is_empty() {
            format!("[{}] {name}", verdict.tag())
        } else {
            format!("[{}] {name}: {summary}", verdict.tag())
        };
        self.lines.push(line);
        self.verdicts.push((name.to_string(), verdict));
    }

    fn detail(&mut self, text: impl AsRef<str>) {
        self.lines.push(format!("    {}", text.as_ref()));
    }

    fn heading(&mut self, text: impl AsRef<str>) {
        self.lines.push(format!("== {}", text.as_ref()));
    }

    pub fn verdicts(&self) -> &[(String, Verdict)] {
        &self.verdicts
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v != Verdict::Fail)
    }

    pub fn verdict_of(&self, name: &str) -> Option<Verdict> {
        self.verdicts.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out += l;
            out.push('\n');
        }
        let fails = self.verdicts.iter().filter(|(_, v)| *v == Verdict::Fail).count();
        let _ = writeln!(out, "result: {} ({} checks, {fails} failed)", if fails == 0 { "PASS" } else { "FAIL" }, self.verdicts.len());
        out
    }

    /// 0 when every verdict passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub normalization: Normalization,
    pub max_degree: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 0, normalization: Normalization::Paper, max_degree: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Principal,
    Connection,
    Certify,
    Idempotent { corep: String },
    Chg { corep: String, degree: usize },
    Hc { degree: usize },
    VerifyAll,
}

/// Seeded points checked in the connection/splitting round trips.
pub const ROUND_TRIP_SAMPLES: u64 = 10;

pub fn run(command: &Command, doc: &AnyDocument, opts: &Options) -> Result<Report> {
    with_document!(doc, |d| Pipeline::new(d, *opts).run(command))
}

fn render_b<F: Field>(f: &F, x: &[F::Elem]) -> String {
    let mut terms = Vec::new();
    for (k, c) in x.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        terms.push(match (k, f.is_one(c)) {
            (0, _) => f.render(c),
            (_, true) => format!("b{k}"),
            (_, false) => format!("{}*b{k}", f.render(c)),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn b_space(nb: usize) -> VectorSpace {
    let labels = std::iter::once("1".to_string()).chain((1..nb).map(|k| format!("b{k}"))).collect();
    VectorSpace::new(labels).expect("distinct labels")
}

fn render_chain<F: Field>(f: &F, chain: &CyclicChain<F::Elem>, nb: usize) -> String {
    if chain.degree == 0 {
        return format!("[{}]", render_b(f, &chain.coords));
    }
    let space = b_space(nb);
    let spaces = vec![&space; chain.degree + 1];
    format!("[{}]", render_combo(f, &chain.coords, &spaces))
}

struct Pipeline<'a, F: Field> {
    doc: &'a Document<F>,
    opts: Options,
    report: Report,
    clock: Instant,
}

impl<'a, F: Field> Pipeline<'a, F> {
    fn new(doc: &'a Document<F>, opts: Options) -> Self {
        Self { doc, opts, report: Report::default(), clock: Instant::now() }
    }

    fn f(&self) -> &F {
        self.doc.field()
    }

    fn lap(&mut self, step: &str) {
        let now = Instant::now();
        self.report.timings.push((step.to_string(), now - self.clock));
        self.clock = now;
    }

    /// Records a failed verdict for `name` and returns `None`; passes other
    /// errors through.
    fn verdict<T>(&mut self, name: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(x) => Ok(Some(x)),
            Err(e) if e.is_verdict() => {
                self.report.check(Verdict::Fail, name, e.to_string());
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn run(mut self, command: &Command) -> Result<Report> {
        match command {
            Command::Validate => {
                self.validate();
            }
            Command::Principal => {
                if let Some(p) = self.principal()? {
                    self.connection(&p)?;
                }
            }
            Command::Connection => {
                if let Some(p) = self.principal()? {
                    if let Some(space) = self.connection(&p)? {
                        self.show_connection(&p, &space.particular);
                        self.round_trips(&p, &space)?;
                    }
                }
            }
            Command::Certify => {
                if let Some(p) = self.principal()? {
                    self.connection(&p)?;
                    self.certificates(&p)?;
                }
            }
            Command::Idempotent { corep } => {
                let phi = self.doc.corep(corep)?.clone();
                if let Some((p, ell, sigma)) = self.prepare()? {
                    let ch = Chern::new(&p, self.opts.normalization)?;
                    self.idempotent(&ch, &ell, &sigma, &phi)?;
                }
            }
            Command::Chg { corep, degree } => {
                self.check_degree(*degree)?;
                let phi = self.doc.corep(corep)?.clone();
                if let Some((p, ell, sigma)) = self.prepare()? {
                    let ch = Chern::new(&p, self.opts.normalization)?;
                    if let Some(e) = self.idempotent(&ch, &ell, &sigma, &phi)? {
                        self.characters(&ch, &ell, &e, &phi, *degree..=*degree)?;
                    }
                }
            }
            Command::Hc { degree } => {
                if *degree > 2 * self.opts.max_degree {
                    return Err(Error::Input(format!(
                        "degree exceeds twice --max-degree ({})",
                        2 * self.opts.max_degree
                    )));
                }
                if self.validate() {
                    if let Some(ext) = self.verdict("coinvariants", Extension::new(self.doc.p.clone()))? {
                        let cx = CyclicComplex::new(ext.b_algebra().clone())?;
                        let d = cx.hc_dimension(*degree);
                        self.report.check(Verdict::Pass, "hc", format!("dim HC_{degree}(B) = {d} (dim B = {})", ext.b_algebra().dim()));
                    }
                }
            }
            Command::VerifyAll => self.verify_all()?,
        }
        Ok(self.report)
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.opts.max_degree {
            return Err(Error::Input(format!(
                "degree exceeds --max-degree ({degree} > {})",
                self.opts.max_degree
            )));
        }
        Ok(())
    }

    fn validate(&mut self) -> bool {
        let d = self.doc;
        let mut violations = d.p.validate().violations;
        if let Some(e) = &d.grouplike {
            if !d.p.coalgebra.is_grouplike(e) {
                violations.push("the declared grouplike element is not group-like".into());
            }
        }
        for phi in &d.coreps {
            let v = phi.validate(&d.p.coalgebra);
            violations.extend(v.violations.into_iter().map(|x| format!("corep {}: {x}", phi.name)));
        }
        self.lap("validate");
        if violations.is_empty() {
            self.report.check(
                Verdict::Pass,
                "validate",
                format!(
                    "dim P = {}, dim C = {}, {} corep(s)",
                    d.p.algebra.dim(),
                    d.p.coalgebra.dim(),
                    d.coreps.len()
                ),
            );
            true
        } else {
            self.report.check(Verdict::Fail, "validate", format!("{} violation(s)", violations.len()));
            for v in violations {
                self.report.detail(v);
            }
            false
        }
    }

    /// Validation and the three principality conditions short of a strong connection.
    fn principal(&mut self) -> Result<Option<Principal<F>>> {
        let e = self.doc.require_grouplike()?.to_vec();
        if !self.validate() {
            return Ok(None);
        }
        let Some(ext) = self.verdict("coinvariants", Extension::new(self.doc.p.clone()))? else {
            return Ok(None);
        };
        let nb = ext.coinvariants().dim();
        let Some(can) = self.verdict("galois", ext.check_galois())? else {
            return Ok(None);
        };
        self.report.check(
            Verdict::Pass,
            "galois",
            format!("can_R bijective, dim B = {nb}, dim P⊗_B P = {} = dim P⊗C", ext.relative_tensor().dim()),
        );
        let Some(psi) = self.verdict("entwining", Entwining::derive(&ext, &can))? else {
            return Ok(None);
        };
        let axioms = psi.axiom_violations(&ext);
        if !axioms.is_empty() {
            self.report.check(Verdict::Fail, "entwining", format!("{} axiom violation(s)", axioms.len()));
            for v in axioms {
                self.report.detail(v);
            }
            return Ok(None);
        }
        self.report.check(Verdict::Pass, "entwining", "ψ bijective, all four axioms hold");
        if self.verdict("coaugmentation", psi.check_coaugmentation(&ext, &e))?.is_none() {
            return Ok(None);
        }
        self.report.check(Verdict::Pass, "coaugmentation", "e group-like, Δ_P = ψ(e⊗-)");
        let Some(left) = self.verdict("left-structures", LeftStructures::build(&ext, &can, &psi, &e))? else {
            return Ok(None);
        };
        self.report.check(Verdict::Pass, "left-structures", "left coaction valid, can_L bijective, can_L^{-1}(c⊗1) = τ(c)");
        self.lap("principal");
        Ok(Some(Principal { ext, e, can, psi, left }))
    }

    fn connection(&mut self, p: &Principal<F>) -> Result<Option<ConnectionSpace<F>>> {
        let Some(space) = self.verdict("strong-connection", p.solve_strong_connection())? else {
            return Ok(None);
        };
        let violations = p.connection_violations(&space.particular);
        self.lap("strong connection");
        if !violations.is_empty() {
            self.report.check(Verdict::Fail, "strong-connection", violations.join("; "));
            return Ok(None);
        }
        self.report.check(
            Verdict::Pass,
            "strong-connection",
            format!("affine solution space of dimension {}", space.dim()),
        );
        Ok(Some(space))
    }

    fn show_connection(&mut self, p: &Principal<F>, ell: &StrongConnection<F>) {
        let f = self.f().clone();
        let pa = p.ext.algebra().space();
        let ca = p.ext.comodule_algebra().coalgebra.space();
        for c in 0..ca.dim() {
            self.report.detail(format!("ℓ({}) = {}", ca.label(c), render_combo(&f, ell.matrix.column(c), &[pa, pa])));
        }
    }

    fn round_trips(&mut self, p: &Principal<F>, space: &ConnectionSpace<F>) -> Result<bool> {
        let f = self.f().clone();
        let mut points = vec![space.particular.clone()];
        points.extend((0..ROUND_TRIP_SAMPLES).map(|k| space.sample(&f, self.opts.seed.wrapping_add(k))));
        let mut problems = Vec::new();
        for (k, ell) in points.iter().enumerate() {
            let v = p.connection_violations(ell);
            if !v.is_empty() {
                problems.push(format!("point {k}: {}", v.join("; ")));
                continue;
            }
            let s = p.connection_to_splitting(ell);
            let sv = p.splitting_violations(&s);
            if !sv.is_empty() {
                problems.push(format!("point {k}: splitting {}", sv.join("; ")));
            }
            if p.splitting_to_connection(&s) != *ell {
                problems.push(format!("point {k}: ℓ ↦ s ↦ ℓ is not the identity"));
            }
            if p.connection_to_splitting(&p.splitting_to_connection(&s)) != s {
                problems.push(format!("point {k}: s ↦ ℓ ↦ s is not the identity"));
            }
        }
        self.lap("round trips");
        if problems.is_empty() {
            self.report.check(
                Verdict::Pass,
                "round-trips",
                format!("connection ↔ splitting exact on {} point(s)", points.len()),
            );
            Ok(true)
        } else {
            self.report.check(Verdict::Fail, "round-trips", format!("{} problem(s)", problems.len()));
            for x in problems {
                self.report.detail(x);
            }
            Ok(false)
        }
    }

    /// Runs every certificate; returns `σ_L` when all of them exist.
    fn certificates(&mut self, p: &Principal<F>) -> Result<Option<Matrix<F::Elem>>> {
        let f = self.f().clone();
        let pa = p.ext.algebra().space().clone();
        let ca = p.ext.comodule_algebra().coalgebra.space().clone();
        let nb = p.ext.coinvariants().dim();
        let bs = b_space(nb);
        let mut all = true;
        for side in [Side::Right, Side::Left] {
            let name = if side == Side::Right { "coflat-j_R" } else { "coflat-j_L" };
            match self.verdict(name, p.solve_colinear_unital(side))? {
                Some(j) => {
                    self.report.check(Verdict::Pass, name, "colinear, j(e) = 1");
                    for c in 0..ca.dim() {
                        self.report.detail(format!("j({}) = {}", ca.label(c), render_combo(&f, j.column(c), &[&pa])));
                    }
                }
                None => all = false,
            }
        }
        let mut sigma_left = None;
        for side in [Side::Left, Side::Right] {
            let name = if side == Side::Left { "sigma_L" } else { "sigma_R" };
            match self.verdict(name, p.solve_sigma(side))? {
                Some(s) => {
                    let kind = if side == Side::Left { "left" } else { "right" };
                    self.report.check(Verdict::Pass, name, format!("unital {kind} B-linear P → B"));
                    for q in 0..pa.dim() {
                        self.report.detail(format!("σ({}) = {}", pa.label(q), render_b(&f, s.column(q))));
                    }
                    if side == Side::Left {
                        sigma_left = Some(s);
                    }
                }
                None => all = false,
            }
        }
        for side in [Side::Left, Side::Right] {
            let name = if side == Side::Left { "projective-left" } else { "projective-right" };
            match self.verdict(name, p.solve_projective_splitting(side))? {
                Some(t) => {
                    self.report.check(Verdict::Pass, name, format!("B-linear section of B^{} → P", pa.dim()));
                    for q in 0..pa.dim() {
                        self.report.detail(format!("t({}) = {}", pa.label(q), render_combo(&f, t.column(q), &[&pa, &bs])));
                    }
                }
                None => all = false,
            }
        }
        match self.verdict("faithful-flatness", p.faithful_flatness())? {
            Some(Flatness::Certified(checks)) => {
                self.report.check(Verdict::Pass, "faithful-flatness", format!("{} simple module(s)", checks.len()));
                for c in checks {
                    let chi: Vec<String> = c.character.iter().map(|x| f.render(x)).collect();
                    self.report.detail(format!(
                        "χ = ({}): dim P⊗_B S = {}, dim S⊗_B P = {}",
                        chi.join(", "),
                        c.right_dim,
                        c.left_dim
                    ));
                }
            }
            Some(Flatness::Unavailable(why)) => self.report.check(Verdict::Unavailable, "faithful-flatness", why),
            None => all = false,
        }
        self.lap("certificates");
        Ok(if all { sigma_left } else { None })
    }

    /// Principal conditions, the particular strong connection and `σ_L`.
    fn prepare(&mut self) -> Result<Option<(Principal<F>, StrongConnection<F>, Matrix<F::Elem>)>> {
        let Some(p) = self.principal()? else { return Ok(None) };
        let Some(space) = self.connection(&p)? else { return Ok(None) };
        let Some(sigma) = self.verdict("sigma_L", p.solve_sigma(Side::Left))? else {
            return Ok(None);
        };
        Ok(Some((p, space.particular, sigma)))
    }

    fn idempotent(
        &mut self,
        ch: &Chern<'_, F>,
        ell: &StrongConnection<F>,
        sigma: &Matrix<F::Elem>,
        phi: &Corepresentation<F>,
    ) -> Result<Option<crate::chern::IdempotentMatrix<F>>> {
        let f = self.f().clone();
        let name = phi.name.clone();
        self.report.heading(format!("corep {name} (dim {})", phi.dim()));
        let Some(e) = self.verdict(&format!("{name}/idempotent"), ch.build_idempotent(ell, sigma, phi))? else {
            return Ok(None);
        };
        let rows: Vec<String> = e
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| render_b(&f, x)).collect::<Vec<_>>().join(",")))
            .collect();
        let np = self.doc.p.algebra.dim();
        let size_ok = e.size == np * phi.dim();
        self.report.check(
            if size_ok { Verdict::Pass } else { Verdict::Fail },
            &format!("{name}/idempotent"),
            format!("E² = E, N = {} = dim P · dim V", e.size),
        );
        self.report.detail(format!("E = [{}]", rows.join(",")));
        self.report.detail(format!("trace(E) = {}", render_b(&f, &e.trace)));
        let Some(value) = self.verdict(&format!("{name}/trace"), ch.trace_value(ell, phi))? else {
            return Ok(None);
        };
        let v = if value == e.trace { Verdict::Pass } else { Verdict::Fail };
        self.report.check(v, &format!("{name}/trace"), format!("c^<2>c^<1> = {}", render_b(&f, &value)));
        let Some(a) = self.verdict(&format!("{name}/iso"), ch.associated_module(phi))? else {
            return Ok(None);
        };
        match self.verdict(&format!("{name}/iso"), ch.module_iso_test(&e, &a, self.opts.seed))? {
            Some(IsoOutcome::Isomorphic { witness, tried }) => self.report.check(
                Verdict::Pass,
                &format!("{name}/iso"),
                format!(
                    "B^N·E ≅ Hom^C(V,P), dim {} over k, witness found after {tried} candidate(s)",
                    witness.rows()
                ),
            ),
            Some(IsoOutcome::NotIsomorphic { module_dim, associated_dim, hom_dim }) => self.report.check(
                Verdict::Fail,
                &format!("{name}/iso"),
                format!("dim B^N·E = {module_dim}, dim Hom^C(V,P) = {associated_dim}, dim Hom_B = {hom_dim}"),
            ),
            Some(IsoOutcome::Inconclusive { tried }) => self.report.check(
                Verdict::Unavailable,
                &format!("{name}/iso"),
                format!("no invertible intertwiner among {tried} candidates"),
            ),
            None => {}
        }
        self.lap(&format!("{name}: idempotent"));
        Ok(Some(e))
    }

    /// `chg_{2n}` and `ch_{2n}(E)` with their comparison for each `n` in `degrees`.
    fn characters(
        &mut self,
        ch: &Chern<'_, F>,
        ell: &StrongConnection<F>,
        e: &crate::chern::IdempotentMatrix<F>,
        phi: &Corepresentation<F>,
        degrees: std::ops::RangeInclusive<usize>,
    ) -> Result<Option<Vec<CyclicChain<F::Elem>>>> {
        let f = self.f().clone();
        let nb = ch.complex().algebra().dim();
        let name = phi.name.clone();
        let mut chains = Vec::new();
        for n in degrees {
            let label = format!("{name}/chg_{}", 2 * n);
            let Some(chg) = self.verdict(&label, ch.chern_galois_character(ell, phi, n))? else {
                return Ok(None);
            };
            self.report.check(Verdict::Pass, &label, render_chain(&f, &chg, nb));
            let label = format!("{name}/ch_{}", 2 * n);
            let Some(che) = self.verdict(&label, ch.chern_character(e, n))? else {
                return Ok(None);
            };
            let same = ch.classes_equal(&che, &chg)?;
            let chain_level = if che == chg { "equal as chains" } else { "chains differ, classes compared" };
            self.report.check(
                if same { Verdict::Pass } else { Verdict::Fail },
                &label,
                format!("[ch_{}(E)] = [chg_{}]: {chain_level}", 2 * n, 2 * n),
            );
            self.lap(&format!("{name}: degree {}", 2 * n));
            chains.push(chg);
        }
        Ok(Some(chains))
    }

    fn verify_all(&mut self) -> Result<()> {
        let Some(p) = self.principal()? else { return Ok(()) };
        let Some(space) = self.connection(&p)? else { return Ok(()) };
        self.round_trips(&p, &space)?;
        let Some(sigma) = self.certificates(&p)? else { return Ok(()) };
        let f = self.f().clone();
        let ell = space.particular.clone();
        let ch = Chern::new(&p, self.opts.normalization)?;
        let max = self.opts.max_degree;
        let coalg = &self.doc.p.coalgebra;
        let mut base = Vec::new();
        for phi in &self.doc.coreps {
            let Some(e) = self.idempotent(&ch, &ell, &sigma, phi)? else { continue };
            let Some(chains) = self.characters(&ch, &ell, &e, phi, 0..=max)? else { continue };
            let name = &phi.name;
            if let Some(other) = space.second(&f, self.opts.seed) {
                let mut ok = true;
                for (n, x) in chains.iter().enumerate() {
                    let y = ch.chern_galois_character(&other, phi, n)?;
                    ok &= ch.classes_equal(x, &y)?;
                }
                self.report.check(
                    if ok { Verdict::Pass } else { Verdict::Fail },
                    &format!("{name}/independence"),
                    format!("second strong connection gives homologous chg in degrees 0..={}", 2 * max),
                );
            } else {
                self.report.check(Verdict::Pass, &format!("{name}/independence"), "the strong connection is unique");
            }
            let t = Matrix::from_columns(
                phi.dim(),
                (0..phi.dim()).map(|j| (0..phi.dim()).map(|i| if i <= j { f.one() } else { f.zero() }).collect()).collect(),
            );
            let moved = phi.change_basis(coalg, &t)?;
            let mut same = true;
            for (n, x) in chains.iter().enumerate() {
                same &= ch.chern_galois_character(&ell, &moved, n)? == *x;
            }
            self.report.check(
                if same { Verdict::Pass } else { Verdict::Fail },
                &format!("{name}/change-of-basis"),
                "chg chains identical after an upper unitriangular change of basis",
            );
            self.lap(&format!("{name}: invariance"));
            base.push((phi, chains));
        }
        for pair in base.windows(2) {
            let ((a, ca), (b, cb)) = (&pair[0], &pair[1]);
            let sum = a.direct_sum(b, coalg)?;
            let mut ok = true;
            for n in 0..=max {
                let lhs = ch.chern_galois_character(&ell, &sum, n)?;
                let rhs = ch.chg_combination(&ell, &[(1, a), (1, b)], n)?;
                let split = CyclicChain {
                    degree: 2 * n,
                    coords: crate::linalg::vec_add(&f, &ca[n].coords, &cb[n].coords),
                };
                ok &= ch.classes_equal(&lhs, &rhs)? && ch.classes_equal(&lhs, &split)?;
            }
            self.report.check(
                if ok { Verdict::Pass } else { Verdict::Fail },
                &format!("additivity {}⊕{}", a.name, b.name),
                format!("[chg(φ⊕φ')] = [chg(φ)] + [chg(φ')] in degrees 0..={}", 2 * max),
            );
        }
        if let Some((a, _)) = base.first() {
            let mut ok = true;
            for n in 0..=max {
                let z = ch.chg_combination(&ell, &[(1, a), (-1, a)], n)?;
                ok &= ch.complex().is_boundary(&z.coords, 2 * n)?;
            }
            self.report.check(
                if ok { Verdict::Pass } else { Verdict::Fail },
                &format!("difference {0}-{0}", a.name),
                "[φ] - [φ] has zero class",
            );
        }
        self.lap("additivity");
        Ok(())
    }
}
