use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use cyclocat::arith::{cyclotomic_polynomial, verify_cyclotomic_identities, Field};
use cyclocat::checks::{run_all, CheckConfig, Status};
use cyclocat::gradedmod::{
    example_three_primes, example_v, example_v_double_prime, example_v_prime, map_from_json, module_from_json,
    module_to_json, GradedModule,
};
use cyclocat::hopf::{verify_all, Structure};
use cyclocat::ideal::{is_in_i, is_in_ik, FiltrationCertificate, IdealSearch, Membership};
use cyclocat::k0::{ideal_generated_by_strings, K0Ring, RingKind};
use cyclocat::stable::{cone, shift_times, stable_hom_in_degree, strip_projectives};

/// What a subcommand produces: a text rendering, a JSON rendering, and
/// whether the process should exit successfully.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
    pub failure: Option<String>,
}

impl Report {
    fn success(text: String, json: Value) -> Self {
        Self { text, json, ok: true, failure: None }
    }

    fn judged(text: String, json: Value, ok: bool, failure: &str) -> Self {
        Self { text, json, ok, failure: (!ok).then(|| failure.to_string()) }
    }
}

pub struct Session<F: Field> {
    structure: Structure<F>,
    seed: u64,
    budget: usize,
}

fn module_json<F: Field>(m: &GradedModule<F>) -> Value {
    serde_json::from_str(&module_to_json(m)).expect("module files are valid JSON")
}

fn certificate_summary<E: Clone + PartialEq + std::fmt::Debug>(cert: &FiltrationCertificate<E>) -> String {
    cert.steps.iter().map(|s| format!("V_{}{{{}}}", s.k + 1, s.shift)).collect::<Vec<_>>().join(" ")
}

impl<F: Field> Session<F> {
    pub fn new(structure: Structure<F>, seed: u64, budget: usize) -> Self {
        Self { structure, seed, budget }
    }

    fn n(&self) -> u64 {
        self.structure.n()
    }

    fn search(&self) -> IdealSearch {
        IdealSearch { seed: self.seed, budget: self.budget, ..IdealSearch::default() }
    }

    fn load_module(&self, path: &Path) -> Result<GradedModule<F>> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        module_from_json(&self.structure, &text).with_context(|| format!("invalid module file {}", path.display()))
    }

    fn membership_json(&self, outcome: &Membership<F::Elem>) -> Value {
        match outcome {
            Membership::Member(cert) => json!({
                "result": outcome.label(),
                "certificate": serde_json::to_value(cert.to_files(self.structure.field())).expect("steps serialize"),
            }),
            Membership::NotMember(o) => json!({ "result": outcome.label(), "obstruction": o.to_string() }),
            Membership::NotCertified { nodes } => json!({ "result": outcome.label(), "nodes": nodes }),
        }
    }

    fn membership_text(outcome: &Membership<F::Elem>) -> String {
        match outcome {
            Membership::Member(cert) => format!("MEMBER  {}", certificate_summary(cert)),
            Membership::NotMember(o) => format!("NOT-MEMBER  {o}"),
            Membership::NotCertified { nodes } => format!("NOT-CERTIFIED  budget exhausted after {nodes} nodes"),
        }
    }

    pub fn verify_hopf(&self) -> Result<Report> {
        let report = verify_all(self.structure.algebra());
        let ok = report.all_passed();
        Ok(Report::judged(report.to_string(), serde_json::to_value(&report)?, ok, "Hopf verification failed"))
    }

    pub fn examples(&self) -> Result<Report> {
        let s = &self.structure;
        let n = self.n();
        let mut named: Vec<(&str, GradedModule<F>)> = Vec::new();
        if n % 6 == 0 {
            named.push(("V", example_v(s)?));
            named.push(("V'", example_v_prime(s)?));
            named.push(("V''", example_v_double_prime(s)?));
        }
        if n % 30 == 0 {
            named.push(("W", example_three_primes(s)?));
        }
        if named.is_empty() {
            let text = format!("two-prime examples unavailable: n = {n} is not divisible by 6\n");
            return Ok(Report::success(text, json!({ "n": n, "available": false })));
        }
        let stmod = K0Ring::stmod(n)?;
        let on = K0Ring::on(n)?;
        let search = self.search();
        let mut text = String::new();
        let mut entries = Vec::new();
        for (name, m) in &named {
            let i = is_in_i(m, &search)?;
            let i2 = if *name == "W" { None } else { Some(is_in_ik(m, 1, &search)?) };
            let (cs, co) = (stmod.class_of(m)?, on.class_of(m)?);
            writeln!(text, "{name}: dim_v = {}", m.graded_dimension())?;
            writeln!(text, "  I:   {}", Self::membership_text(&i))?;
            if let Some(i2) = &i2 {
                writeln!(text, "  I_2: {}", Self::membership_text(i2))?;
            }
            writeln!(text, "  K0(stmod) = {cs}")?;
            writeln!(text, "  K0(O_n)   = {co}")?;
            entries.push(json!({
                "name": name,
                "graded_dimension": m.graded_dimension().to_string(),
                "ideal": self.membership_json(&i),
                "ideal_2": i2.as_ref().map(|o| self.membership_json(o)),
                "k0_stmod": cs.to_string(),
                "k0_on": co.to_string(),
            }));
        }
        writeln!(text, "stable hom dimensions (degree 0, row -> column):")?;
        let mut table = Vec::new();
        for (a, ma) in &named {
            let mut row = Vec::new();
            for (_, mb) in &named {
                row.push(stable_hom_in_degree(ma, mb, 0)?.stable_dimension);
            }
            writeln!(
                text,
                "  {a:<4} {}",
                row.iter().map(|d| format!("{d:>3}")).collect::<Vec<_>>().join(" ")
            )?;
            table.push(row);
        }
        let names: Vec<&str> = named.iter().map(|(a, _)| *a).collect();
        let json = json!({ "n": n, "available": true, "modules": entries, "stable_hom": { "order": names, "dimensions": table } });
        Ok(Report::success(text, json))
    }

    pub fn k0(&self, ring: RingKind, path: &Path) -> Result<Report> {
        let m = self.load_module(path)?;
        let r = K0Ring::new(ring, self.n())?;
        let class = r.class_of(&m)?;
        let text = format!("{class}\n");
        Ok(Report::success(text, json!({ "n": self.n(), "ring": ring.to_string(), "class": class.to_string() })))
    }

    pub fn k0_ideal(&self) -> Result<Report> {
        let n = self.n();
        let gcd = ideal_generated_by_strings(n)?;
        let phi = cyclotomic_polynomial(n)?;
        let ok = gcd == phi;
        let text = format!("gcd of string classes: {gcd}\nPhi_{n}: {phi}\nequal: {ok}\n");
        let json = json!({ "n": n, "generator": gcd.to_string(), "cyclotomic": phi.to_string(), "equal": ok });
        Ok(Report::judged(text, json, ok, "string gcd differs from the cyclotomic polynomial"))
    }

    pub fn ideal_test(&self, k: Option<usize>, path: &Path) -> Result<Report> {
        let m = self.load_module(path)?;
        let t = self.structure.num_primes();
        let search = self.search();
        let outcome = match k {
            None => is_in_i(&m, &search)?,
            Some(k) if k >= 1 && k <= t => is_in_ik(&m, k - 1, &search)?,
            Some(k) => bail!("--k {k} is out of range: n = {} has {t} prime factor(s)", self.n()),
        };
        let mut text = format!("{}\n", Self::membership_text(&outcome));
        let mut json = self.membership_json(&outcome);
        if let Membership::Member(_) = &outcome {
            let cert = json["certificate"].clone();
            writeln!(text, "{}", serde_json::to_string_pretty(&cert)?)?;
        }
        json["ideal"] = match k {
            Some(k) => json!(format!("I_{k}")),
            None => json!("I"),
        };
        Ok(Report::success(text, json))
    }

    pub fn stable_hom(&self, source: &Path, target: &Path, degree: i64) -> Result<Report> {
        let m = self.load_module(source)?;
        let n = self.load_module(target)?;
        let st = stable_hom_in_degree(&m, &n, degree)?;
        let (total, null) = (st.total.len(), st.null_homotopic.len());
        let text = format!("degree {degree}: total {total}, null-homotopic {null}, stable {}\n", st.stable_dimension);
        let json = json!({ "degree": degree, "total": total, "null_homotopic": null, "stable": st.stable_dimension });
        Ok(Report::success(text, json))
    }

    pub fn shift(&self, times: i64, path: &Path) -> Result<Report> {
        let m = self.load_module(path)?;
        let shifted = shift_times(&m, times)?;
        Ok(Report::success(format!("{}\n", module_to_json(&shifted)), module_json(&shifted)))
    }

    pub fn cone(&self, path: &Path, strip: bool) -> Result<Report> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let map = map_from_json(&self.structure, &text).with_context(|| format!("invalid map file {}", path.display()))?;
        let mut c = cone(&map)?.module;
        if strip {
            c = strip_projectives(&c)?.reduced;
        }
        Ok(Report::success(format!("{}\n", module_to_json(&c)), module_json(&c)))
    }

    pub fn cyclotomic(&self, to: Option<u64>) -> Result<Report> {
        let from = self.n();
        let to = to.unwrap_or(from);
        if to < from {
            bail!("--to {to} is below --n {from}");
        }
        let mut text = String::new();
        let mut failures = Vec::new();
        for n in from..=to {
            let r = verify_cyclotomic_identities(n)?;
            let gcd_ok = ideal_generated_by_strings(n)? == cyclotomic_polynomial(n)?;
            let ok = r.all_pass() && gcd_ok;
            if !ok {
                failures.push(n);
            }
            writeln!(text, "n={n:<6} radical={:<6} {}", r.radical, if ok { "ok" } else { "FAIL" })?;
        }
        let checked = to - from + 1;
        writeln!(text, "{checked} values checked, {} failures", failures.len())?;
        let json = json!({ "from": from, "to": to, "checked": checked, "failures": failures });
        Ok(Report::judged(text, json, failures.is_empty(), "cyclotomic identities failed"))
    }

    pub fn all_checks(&self) -> Result<Report> {
        let config = CheckConfig { seed: self.seed, budget: self.budget, ..CheckConfig::default() };
        let results = run_all(&self.structure, &config);
        let mut text = String::new();
        for r in &results {
            writeln!(text, "{r}")?;
        }
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        let (pass, fail, skip) = (count(Status::Pass), count(Status::Fail), count(Status::Skip));
        writeln!(text, "summary: {pass} passed, {fail} failed, {skip} skipped")?;
        let json = json!({
            "n": self.n(),
            "field": self.structure.field().name(),
            "seed": self.seed,
            "budget": self.budget,
            "results": serde_json::to_value(&results)?,
            "passed": pass,
            "failed": fail,
            "skipped": skip,
        });
        Ok(Report::judged(text, json, fail == 0, "some checks failed"))
    }
}
