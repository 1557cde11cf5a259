//! Registry of the equations presenting the theory, and a harness checking
//! each instance against the relational semantics.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::circuit::{Circuit, Interface};
use crate::semantics::{compare, Verdict};

pub const DEFAULT_SEED: u64 = 0x1ba1_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    PaperTranscribed,
    Reconstructed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::PaperTranscribed => "paper-transcribed",
            Status::Reconstructed => "reconstructed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub lhs: Circuit,
    pub rhs: Circuit,
    pub status: Status,
}

impl Axiom {
    fn new(name: impl Into<String>, lhs: Circuit, rhs: Circuit, status: Status) -> Self {
        Axiom {
            name: name.into(),
            lhs,
            rhs,
            status,
        }
    }

    /// The family name, without instance parameters.
    pub fn family(&self) -> &str {
        self.name.split('[').next().unwrap_or(&self.name)
    }
}

fn c(s: &str) -> Circuit {
    Circuit::parse(s).expect("registry circuit parses")
}

fn amp(k: i64) -> Circuit {
    Circuit::amp(k)
}

fn coamp(k: i64) -> Circuit {
    Circuit::coamp(k)
}

fn pair(a: Circuit, b: Circuit) -> Circuit {
    a.beside(b)
}

/// Scalars at which parameterized families are instantiated: `-3..=3`
/// and three larger draws.
pub fn scalars(seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ks: Vec<i64> = (-3..=3).collect();
    while ks.len() < 10 {
        let k = rng.gen_range(4..=24) * if rng.gen_bool(0.5) { 1 } else { -1 };
        if !ks.contains(&k) {
            ks.push(k);
        }
    }
    ks
}

pub fn axioms(seed: u64) -> Vec<Axiom> {
    use Status::{PaperTranscribed as T, Reconstructed as R};
    let mut out = vec![
        Axiom::new("A1", c("zero * id ; add"), c("id"), R),
        Axiom::new("A2", c("sym ; add"), c("add"), R),
        Axiom::new("A3", c("add * id ; add"), c("id * add ; add"), R),
        Axiom::new("A4", c("dup ; del * id"), c("id"), R),
        Axiom::new("A5", c("dup ; sym"), c("dup"), R),
        Axiom::new("A6", c("dup ; dup * id"), c("dup ; id * dup"), R),
        Axiom::new("A7", c("zero ; dup"), c("zero * zero"), R),
        Axiom::new(
            "A8",
            c("add ; dup"),
            c("dup * dup ; id * sym * id ; add * add"),
            R,
        ),
        Axiom::new("A9", c("add ; del"), c("del * del"), T),
        Axiom::new("A10", c("zero ; del"), c("id(0)"), R),
        Axiom::new("A11", amp(1), c("id"), T),
    ];
    let ks = scalars(seed);
    let partner = |i: usize| ks[(i + 3) % ks.len()];
    for (i, &k) in ks.iter().enumerate() {
        let b = partner(i);
        out.push(Axiom::new(
            format!("A12[{k},{b}]"),
            amp(k).then(amp(b)),
            amp(k * b),
            T,
        ));
    }
    for &k in &ks {
        out.push(Axiom::new(
            format!("A13[{k}]"),
            c("add").then(amp(k)),
            pair(amp(k), amp(k)).then(c("add")),
            R,
        ));
        out.push(Axiom::new(
            format!("A14[{k}]"),
            c("zero").then(amp(k)),
            c("zero"),
            R,
        ));
        out.push(Axiom::new(
            format!("A15[{k}]"),
            amp(k).then(c("dup")),
            c("dup").then(pair(amp(k), amp(k))),
            R,
        ));
        out.push(Axiom::new(
            format!("A16[{k}]"),
            amp(k).then(c("del")),
            c("del"),
            R,
        ));
    }
    out.push(Axiom::new("A17", amp(0), c("del ; zero"), T));
    for (i, &k) in ks.iter().enumerate() {
        let b = partner(i);
        out.push(Axiom::new(
            format!("A18[{k},{b}]"),
            c("dup").then(pair(amp(k), amp(b))).then(c("add")),
            amp(k + b),
            R,
        ));
    }
    out.push(Axiom::new(
        "Hopf",
        c("dup ; neg * id ; add"),
        c("del ; zero"),
        T,
    ));
    for &l in ks.iter().filter(|&&k| k != 0) {
        out.push(Axiom::new(
            format!("I1[{l}]"),
            amp(l).then(coamp(l)),
            c("id"),
            T,
        ));
        out.push(Axiom::new(
            format!("I2[{l}]"),
            coamp(l).then(amp(l)),
            c("id"),
            T,
        ));
    }
    out.extend([
        Axiom::new(
            "I3-white-frobenius-left",
            c("coadd * id ; id * add"),
            c("add ; coadd"),
            R,
        ),
        Axiom::new(
            "I3-white-frobenius-right",
            c("id * coadd ; add * id"),
            c("add ; coadd"),
            R,
        ),
        Axiom::new(
            "I4-black-frobenius-left",
            c("dup * id ; id * codup"),
            c("codup ; dup"),
            R,
        ),
        Axiom::new(
            "I4-black-frobenius-right",
            c("id * dup ; codup * id"),
            c("codup ; dup"),
            R,
        ),
        Axiom::new("I5", c("zero ; coadd"), c("codel ; dup ; id * neg"), R),
        Axiom::new("I6", c("add ; cozero"), c("id * neg ; codup ; del"), R),
        Axiom::new("I7-white-separable", c("coadd ; add"), c("id"), T),
        Axiom::new("I8-black-separable", c("dup ; codup"), c("id"), T),
        Axiom::new("antipode-involutive", c("neg ; neg"), c("id"), T),
        Axiom::new("white-bone", c("zero ; cozero"), c("id(0)"), T),
        Axiom::new("black-bone", c("codel ; del"), c("id(0)"), T),
    ]);
    out
}

/// Instance by exact name (`"Hopf"`, `"I1[2]"`, `"A18[2,3]"`), drawn from
/// the default registry or built on demand for parameterized families.
pub fn lookup(name: &str) -> Option<Axiom> {
    if let Some(a) = axioms(DEFAULT_SEED).into_iter().find(|a| a.name == name) {
        return Some(a);
    }
    let (family, args) = name.strip_suffix(']')?.split_once('[')?;
    let ks: Vec<i64> = args
        .split(',')
        .map(|s| s.trim().parse().ok())
        .collect::<Option<_>>()?;
    instantiate(family, &ks)
}

/// Builds one instance of a parameterized family.
pub fn instantiate(family: &str, ks: &[i64]) -> Option<Axiom> {
    use Status::{PaperTranscribed as T, Reconstructed as R};
    let name = format!(
        "{family}[{}]",
        ks.iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let ax = match (family, ks) {
        ("A12", &[a, b]) => Axiom::new(name, amp(a).then(amp(b)), amp(a.checked_mul(b)?), T),
        ("A13", &[k]) => Axiom::new(
            name,
            c("add").then(amp(k)),
            pair(amp(k), amp(k)).then(c("add")),
            R,
        ),
        ("A14", &[k]) => Axiom::new(name, c("zero").then(amp(k)), c("zero"), R),
        ("A15", &[k]) => Axiom::new(
            name,
            amp(k).then(c("dup")),
            c("dup").then(pair(amp(k), amp(k))),
            R,
        ),
        ("A16", &[k]) => Axiom::new(name, amp(k).then(c("del")), c("del"), R),
        ("A18", &[a, b]) => Axiom::new(
            name,
            c("dup").then(pair(amp(a), amp(b))).then(c("add")),
            amp(a.checked_add(b)?),
            R,
        ),
        ("I1", &[l]) if l != 0 => Axiom::new(name, amp(l).then(coamp(l)), c("id"), T),
        ("I2", &[l]) if l != 0 => Axiom::new(name, coamp(l).then(amp(l)), c("id"), T),
        _ => return None,
    };
    Some(ax)
}

/// Deliberately unsound equations the harness must reject.
pub fn negative_controls() -> Vec<Axiom> {
    use Status::Reconstructed as R;
    vec![
        Axiom::new("control-amp2-coamp3", c("amp(2) ; coamp(3)"), c("id"), R),
        Axiom::new("control-add-coadd", c("add ; coadd"), c("id(2)"), R),
        Axiom::new("control-del-zero", c("del ; zero"), c("id"), R),
    ]
}

pub fn check_axiom(a: &Axiom) -> bool {
    compare(&a.lhs, &a.rhs).is_equal()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub interface: Option<Interface>,
    pub passed: bool,
    /// Negative controls are expected to fail.
    pub control: bool,
    pub reason: Option<String>,
}

impl Check {
    pub fn as_expected(&self) -> bool {
        self.passed != self.control
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

fn run(a: &Axiom, control: bool) -> Check {
    let verdict = compare(&a.lhs, &a.rhs);
    Check {
        name: a.name.clone(),
        status: a.status,
        interface: a.lhs.typecheck().ok(),
        passed: verdict.is_equal(),
        control,
        reason: match verdict {
            Verdict::Equal => None,
            v => Some(v.to_string()),
        },
    }
}

pub fn check_all(registry: &[Axiom], controls: &[Axiom]) -> Report {
    let mut report = Report::default();
    if registry.is_empty() {
        report
            .warnings
            .push("empty registry: nothing to check".into());
    }
    report.checks.extend(registry.iter().map(|a| run(a, false)));
    report.checks.extend(controls.iter().map(|a| run(a, true)));
    report
}

impl Report {
    /// All axioms pass and all controls fail.
    pub fn success(&self) -> bool {
        self.checks.iter().all(Check::as_expected)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
        for ch in &self.checks {
            let iface = ch
                .interface
                .map(|i| i.to_string())
                .unwrap_or_else(|| "ill-typed".into());
            let verdict = if ch.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{verdict} {} {iface}\n", ch.name));
        }
        let axioms = self.checks.iter().filter(|c| !c.control);
        let controls = self.checks.iter().filter(|c| c.control);
        out.push_str(&format!(
            "# {}/{} axioms pass, {}/{} negative controls rejected\n",
            axioms.clone().filter(|c| c.passed).count(),
            axioms.count(),
            controls.clone().filter(|c| !c.passed).count(),
            controls.count(),
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "success": self.success(),
            "warnings": self.warnings,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.to_string(),
                "interface": c.interface.map(|i| i.to_string()),
                "passed": c.passed,
                "control": c.control,
                "reason": c.reason,
            })).collect::<Vec<_>>(),
        })
    }
}
