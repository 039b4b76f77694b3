//! Machine-checked reports for the statements about quotients, splitting and
//! the classes `C_k`. Every report carries certificates that can be replayed
//! through the library without the search that produced them.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::catalog::{self, named};
use crate::construct::{
    distinct_quotients, quotient_by, single_extensions, split, ExtensionColumn, QuotientRecord,
};
use crate::corpus::{cographic_corpus, dedupe_by_signature, DEFAULT_MAX_EDGES};
use crate::error::{Error, Result};
use crate::iso::Isomorphism;
use crate::matroid::{BinaryMatroid, GroundSubset};
use crate::recognition::{
    first_nongraphic_split, has_minor, is_cographic, is_graphic, is_minimal_excluded,
    single_element_minors, Membership, MinorTarget, MinorWitness,
};

#[derive(Clone, Debug)]
pub struct Options {
    pub max_edges: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// A replayable piece of evidence.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// `host \ deleted / contracted` is isomorphic to `target`.
    Minor {
        host: BinaryMatroid,
        target: BinaryMatroid,
        witness: MinorWitness,
    },
    /// No minor of `host` is isomorphic to `target`.
    NoMinor {
        host: BinaryMatroid,
        target: BinaryMatroid,
    },
    Isomorphic {
        from: BinaryMatroid,
        to: BinaryMatroid,
        map: Isomorphism,
    },
    /// The quotient of `source` by `column` maps onto `target` under `map`.
    Quotient {
        source: BinaryMatroid,
        column: ExtensionColumn,
        target: BinaryMatroid,
        map: Isomorphism,
    },
    /// None of the excluded minors for graphic matroids is a minor.
    Graphic { matroid: BinaryMatroid },
    /// The splitting of `matroid` by `set` has the excluded minor `obstruction`.
    NonGraphicSplit {
        matroid: BinaryMatroid,
        set: Vec<String>,
        obstruction: BinaryMatroid,
        witness: MinorWitness,
    },
    /// Every `k`-element splitting of `matroid` is graphic.
    SplitsGraphic { matroid: BinaryMatroid, k: usize },
    /// `matroid` has exactly `odd` cocircuits of odd size.
    OddCocircuits { matroid: BinaryMatroid, odd: usize },
    /// The ground set is the disjoint union of these circuits.
    CircuitPartition {
        matroid: BinaryMatroid,
        parts: Vec<Vec<String>>,
    },
    /// An enumeration count, kept for the record.
    Count { what: String, value: usize },
}

fn set_text(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

impl Certificate {
    fn minor(host: &BinaryMatroid, target: &BinaryMatroid, witness: MinorWitness) -> Self {
        Certificate::Minor {
            host: host.clone(),
            target: target.clone(),
            witness,
        }
    }

    /// Checks the certificate from scratch.
    pub fn replay(&self) -> Result<bool> {
        match self {
            Certificate::Minor {
                host,
                target,
                witness,
            } => witness.certifies(host, target),
            Certificate::NoMinor { host, target } => Ok(has_minor(host, target)?.is_none()),
            Certificate::Isomorphic { from, to, map } => Ok(map.certifies(from, to)),
            Certificate::Quotient {
                source,
                column,
                target,
                map,
            } => Ok(map.certifies(&quotient_by(source, column)?, target)),
            Certificate::Graphic { matroid } => Ok(is_graphic(matroid)?.holds),
            Certificate::NonGraphicSplit {
                matroid,
                set,
                obstruction,
                witness,
            } => {
                let s = matroid.subset(set)?;
                if is_graphic(obstruction)?.holds {
                    return Ok(false);
                }
                witness.certifies(&split(matroid, s), obstruction)
            }
            Certificate::SplitsGraphic { matroid, k } => {
                if *k > matroid.len() {
                    return Ok(true);
                }
                Ok(first_nongraphic_split(matroid, *k)?.is_member())
            }
            Certificate::OddCocircuits { matroid, odd } => {
                Ok(matroid.odd_cocircuits()?.len() == *odd)
            }
            Certificate::CircuitPartition { matroid, parts } => {
                let circuits = matroid.circuits()?;
                let mut covered = GroundSubset::EMPTY;
                for part in parts {
                    let s = matroid.subset(part)?;
                    if !covered.intersection(s).is_empty() || !circuits.contains(&s) {
                        return Ok(false);
                    }
                    covered = covered.union(s);
                }
                Ok(covered == matroid.ground())
            }
            Certificate::Count { .. } => Ok(true),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Minor {
                host,
                target,
                witness,
            } => write!(
                f,
                "minor {} of {}: delete {} contract {}",
                target.name(),
                host.name(),
                set_text(&witness.deleted),
                set_text(&witness.contracted)
            ),
            Certificate::NoMinor { host, target } => {
                write!(f, "no minor {} in {}", target.name(), host.name())
            }
            Certificate::Isomorphic { from, to, map } => {
                let pairs: Vec<String> = map
                    .label_pairs(from, to)
                    .into_iter()
                    .map(|(a, b)| format!("{a}->{b}"))
                    .collect();
                write!(
                    f,
                    "{} isomorphic to {}: {}",
                    from.name(),
                    to.name(),
                    pairs.join(" ")
                )
            }
            Certificate::Quotient {
                source,
                column,
                target,
                ..
            } => write!(
                f,
                "quotient of {} by column {} is {}",
                source.name(),
                column,
                target.name()
            ),
            Certificate::Graphic { matroid } => write!(f, "{} is graphic", matroid.name()),
            Certificate::NonGraphicSplit {
                matroid,
                set,
                obstruction,
                witness,
            } => write!(
                f,
                "split of {} by {} has minor {}: delete {} contract {}",
                matroid.name(),
                set_text(set),
                obstruction.name(),
                set_text(&witness.deleted),
                set_text(&witness.contracted)
            ),
            Certificate::SplitsGraphic { matroid, k } => {
                write!(
                    f,
                    "every {k}-element splitting of {} is graphic",
                    matroid.name()
                )
            }
            Certificate::OddCocircuits { matroid, odd } => {
                write!(f, "{} has {odd} odd cocircuits", matroid.name())
            }
            Certificate::CircuitPartition { matroid, parts } => {
                let parts: Vec<String> = parts.iter().map(|p| set_text(p)).collect();
                write!(
                    f,
                    "{} partitions into circuits {}",
                    matroid.name(),
                    parts.join(" ")
                )
            }
            Certificate::Count { what, value } => write!(f, "{what}: {value}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub target: String,
    pub status: Status,
    pub evidence: Vec<Certificate>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Replays every certificate; true when all of them check out.
    pub fn replay(&self) -> Result<bool> {
        let results: Vec<Result<bool>> =
            self.evidence.par_iter().map(Certificate::replay).collect();
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `statement-id TAB pass|fail TAB evidence-count`
    pub fn tsv_line(&self) -> String {
        format!("{}\t{}\t{}", self.target, self.status, self.evidence.len())
    }

    pub fn to_text(&self, with_evidence: bool) -> String {
        let mut out = format!(
            "[{}] {} ({} certificates, {:.1?})\n",
            match self.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            },
            self.target,
            self.evidence.len(),
            self.elapsed
        );
        for note in &self.notes {
            out.push_str(&format!("  {note}\n"));
        }
        if with_evidence {
            for c in &self.evidence {
                out.push_str(&format!("    - {c}\n"));
            }
        }
        out
    }
}

/// Collects evidence and notes while a statement is checked.
struct Builder {
    target: String,
    ok: bool,
    evidence: Vec<Certificate>,
    notes: Vec<String>,
    start: Instant,
}

impl Builder {
    fn new(target: &str) -> Self {
        Builder {
            target: target.to_string(),
            ok: true,
            evidence: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    fn require(&mut self, cond: bool, failure: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("FAILED: {}", failure.into()));
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn cert(&mut self, c: Certificate) {
        self.evidence.push(c);
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            target: self.target,
            status: if self.ok { Status::Pass } else { Status::Fail },
            evidence: self.evidence,
            notes: self.notes,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Statement ids accepted by [`run`], in report order.
pub const STATEMENTS: &[&str] = &[
    "embedding:Q1-MK5star",
    "embedding:Q2-MK33star",
    "gate:a",
    "gate:b",
    "gate:c",
    "gate:d",
    "gate:e",
    "gate:f",
    "lemma:eulerian",
    "lemma:ngqF7",
    "lemma:ngqF7star",
    "lemma:ngqMK33star",
    "lemma:ngqMK5star",
    "lemma:qF7",
    "lemma:qF7star",
    "lemma:qMK33star",
    "lemma:qMK5star",
    "recognition:table",
    "remark:C1",
    "theorem:C2-necessity",
    "theorem:C2-sufficiency",
    "theorem:C3-necessity",
    "theorem:C3-sufficiency",
    "theorem:structure-k2",
    "theorem:structure-k3",
];

/// Runs one statement. `theorem:C2` and `theorem:C3` are shorthand for their
/// necessity and sufficiency parts together.
pub fn run(id: &str, opts: &Options) -> Result<Vec<VerificationReport>> {
    let one = |r: Result<VerificationReport>| r.map(|r| vec![r]);
    match id {
        "all" => run_all(opts),
        "theorem:C2" | "theorem:C3" => {
            let k = if id.ends_with('2') { 2 } else { 3 };
            Ok(vec![necessity(k)?, sufficiency(k, opts.max_edges)?])
        }
        "embedding:Q1-MK5star" => one(embedding("Q1", "M*(K5)", id)),
        "embedding:Q2-MK33star" => one(embedding("Q2", "M*(K33)", id)),
        "gate:a" => one(gate_a()),
        "gate:b" => one(gate_b()),
        "gate:c" => one(gate_c()),
        "gate:d" => one(gate_d()),
        "gate:e" => one(gate_e()),
        "gate:f" => one(gate_f()),
        "lemma:eulerian" => one(eulerian()),
        "lemma:ngqF7" => one(nongraphic_quotients("F7", id)),
        "lemma:ngqF7star" => one(nongraphic_quotients("F7*", id)),
        "lemma:ngqMK33star" => one(nongraphic_quotients("M*(K33)", id)),
        "lemma:ngqMK5star" => one(nongraphic_quotients("M*(K5)", id)),
        "lemma:qF7" => one(graphic_quotients("F7", id)),
        "lemma:qF7star" => one(graphic_quotients("F7*", id)),
        "lemma:qMK33star" => one(graphic_quotients("M*(K33)", id)),
        "lemma:qMK5star" => one(graphic_quotients("M*(K5)", id)),
        "recognition:table" => one(recognition_table()),
        "remark:C1" => one(remark_c1(opts.max_edges)),
        "theorem:C2-necessity" => one(necessity(2)),
        "theorem:C2-sufficiency" => one(sufficiency(2, opts.max_edges)),
        "theorem:C3-necessity" => one(necessity(3)),
        "theorem:C3-sufficiency" => one(sufficiency(3, opts.max_edges)),
        "theorem:structure-k2" => one(structure(2, opts.max_edges)),
        "theorem:structure-k3" => one(structure(3, opts.max_edges)),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Every statement, sorted by id.
pub fn run_all(opts: &Options) -> Result<Vec<VerificationReport>> {
    STATEMENTS
        .iter()
        .map(|id| run(id, opts).map(|mut v| v.remove(0)))
        .collect()
}

/// Graphic quotient classes expected for each excluded minor of graphic matroids.
pub fn expected_graphic_quotients(source: &str) -> &'static [&'static str] {
    match source {
        "F7*" => &["M(Q1)", "M(Q2)"],
        "F7" => &["M(Q3)"],
        "M*(K33)" => &["M(Q4)", "M(Q5)"],
        "M*(K5)" => &["M(Q6)", "M(Q7)", "M(Q8)", "M(Q9)"],
        _ => &[],
    }
}

fn quotient_name(source: &BinaryMatroid, r: &QuotientRecord) -> String {
    format!("{}/z[{}]", source.name(), r.extension_column)
}

/// Matches each quotient class against the expected names; returns the
/// certificates for the matches and the names that were found.
fn match_quotients(
    source: &BinaryMatroid,
    classes: &[QuotientRecord],
    expected: &[&str],
) -> Result<(Vec<Certificate>, Vec<String>, Vec<String>)> {
    let mut certs = Vec::new();
    let mut found = Vec::new();
    let mut unmatched = Vec::new();
    for r in classes {
        let mut hit = None;
        for name in expected {
            let t = named(name)?;
            if let Some(map) = r.quotient.is_isomorphic(&t)? {
                hit = Some((name.to_string(), t, map));
                break;
            }
        }
        match hit {
            Some((name, target, map)) => {
                certs.push(Certificate::Quotient {
                    source: source.clone(),
                    column: r.extension_column,
                    target,
                    map,
                });
                found.push(name);
            }
            None => unmatched.push(quotient_name(source, r)),
        }
    }
    Ok((certs, found, unmatched))
}

fn graphic_quotients(source: &str, id: &str) -> Result<VerificationReport> {
    let mut b = Builder::new(id);
    let f = named(source)?;
    let raw = single_extensions(&f).count();
    b.cert(Certificate::Count {
        what: format!("single extensions of {source}"),
        value: raw,
    });
    b.require(
        raw == (1 << f.rank()) + 1,
        "extension count differs from 2^r + 1",
    );
    let classes = distinct_quotients(&f);
    let graphic: Vec<QuotientRecord> = classes.iter().filter(|r| r.is_graphic).cloned().collect();
    b.cert(Certificate::Count {
        what: format!("quotient classes of {source}"),
        value: classes.len(),
    });
    let expected = expected_graphic_quotients(source);
    let (certs, mut found, unmatched) = match_quotients(&f, &graphic, expected)?;
    b.evidence.extend(certs);
    for r in graphic.iter() {
        b.cert(Certificate::Graphic {
            matroid: r.quotient.clone().with_name(quotient_name(&f, r)),
        });
    }
    found.sort();
    let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    want.sort();
    b.note(format!("graphic quotient classes: {}", found.join(", ")));
    b.require(
        unmatched.is_empty(),
        format!("unexpected graphic classes {unmatched:?}"),
    );
    b.require(found == want, format!("expected exactly {want:?}"));
    Ok(b.finish())
}

fn nongraphic_quotients(source: &str, id: &str) -> Result<VerificationReport> {
    let mut b = Builder::new(id);
    let f = named(source)?;
    let f7 = named("F7")?;
    let f7s = named("F7*")?;
    let classes = distinct_quotients(&f);
    let mut relevant = Vec::new();
    for r in classes.iter().filter(|r| !r.is_graphic) {
        if r.avoids_fano_minors()? {
            relevant.push(r.clone());
        }
    }
    // F7 and F7* must have none; the others exactly their own class.
    let expect_self = source.starts_with("M*");
    for r in &relevant {
        let q = r.quotient.clone().with_name(quotient_name(&f, r));
        let verdict = is_graphic(&q)?;
        let o = verdict
            .obstruction
            .expect("non-graphic quotient has an obstruction");
        b.cert(Certificate::minor(&q, &named(&o.minor)?, o.witness));
        b.cert(Certificate::NoMinor {
            host: q.clone(),
            target: f7.clone(),
        });
        b.cert(Certificate::NoMinor {
            host: q.clone(),
            target: f7s.clone(),
        });
        let own = r.quotient.is_isomorphic(&f)?;
        match own {
            Some(map) if expect_self => {
                b.cert(Certificate::Quotient {
                    source: f.clone(),
                    column: r.extension_column,
                    target: f.clone(),
                    map,
                });
                b.require(
                    r.extension_column.is_loop_or_coloop(),
                    format!("{source} recovered from a non-loop, non-coloop column"),
                );
            }
            _ => b.note(format!(
                "non-graphic F7/F7*-free quotient {} (extension column {}, rank {}) has minor {} but is not isomorphic to {source}",
                q.name(),
                r.extension_column,
                q.rank(),
                o.minor
            )),
        }
    }
    let count = relevant.len();
    b.cert(Certificate::Count {
        what: format!("non-graphic F7/F7*-free quotient classes of {source}"),
        value: count,
    });
    if expect_self {
        b.require(
            count == 1,
            format!("{count} classes, expected exactly one ({source} itself)"),
        );
    } else {
        b.require(count == 0, format!("{count} classes, expected none"));
    }
    Ok(b.finish())
}

fn eulerian() -> Result<VerificationReport> {
    let mut b = Builder::new("lemma:eulerian");
    let k5 = named("M(K5)")?;
    let k33 = named("M(K33)")?;
    let odd_k5 = k5.odd_cocircuits()?.len();
    let odd_k33 = k33.odd_cocircuits()?.len();
    b.cert(Certificate::OddCocircuits {
        matroid: k5.clone(),
        odd: odd_k5,
    });
    b.cert(Certificate::OddCocircuits {
        matroid: k33.clone(),
        odd: odd_k33,
    });
    b.require(odd_k5 == 0, format!("M(K5) has {odd_k5} odd cocircuits"));
    b.require(
        odd_k33 >= 6,
        format!("M(K33) has only {odd_k33} odd cocircuits"),
    );
    match k5.circuit_partition()? {
        Some(parts) => b.cert(Certificate::CircuitPartition {
            parts: parts
                .into_iter()
                .map(|p| k5.subset_labels(p).into_iter().map(String::from).collect())
                .collect(),
            matroid: k5.clone(),
        }),
        None => b.require(false, "M(K5) has no partition into circuits"),
    }
    b.require(!k33.is_eulerian()?, "M(K33) reported Eulerian");
    b.note(format!(
        "M(K5): {odd_k5} odd cocircuits; M(K33): {odd_k33} odd cocircuits"
    ));
    Ok(b.finish())
}

fn embedding(graph: &str, host: &str, id: &str) -> Result<VerificationReport> {
    let mut b = Builder::new(id);
    let target = named(&format!("M({graph})"))?;
    let host_m = named(host)?;
    for (h, t) in [
        (host_m.clone(), target.clone()),
        (host_m.dual(), target.dual()),
    ] {
        match has_minor(&h, &t)? {
            Some(w) => b.cert(Certificate::minor(&h, &t, w)),
            None => b.require(
                false,
                format!("{} is not a minor of {}", t.name(), h.name()),
            ),
        }
    }
    Ok(b.finish())
}

fn recognition_table() -> Result<VerificationReport> {
    let mut b = Builder::new("recognition:table");
    // (name, graphic, cographic)
    let table = [
        ("F7", false, false),
        ("F7*", false, false),
        ("M(K5)", true, false),
        ("M*(K5)", false, true),
        ("M(K33)", true, false),
        ("M*(K33)", false, true),
    ];
    for (name, graphic, cographic) in table {
        let m = named(name)?;
        let g = is_graphic(&m)?;
        let c = is_cographic(&m)?;
        b.require(g.holds == graphic, format!("{name}: graphic = {}", g.holds));
        b.require(
            c.holds == cographic,
            format!("{name}: cographic = {}", c.holds),
        );
        match g.obstruction {
            Some(o) => b.cert(Certificate::minor(&m, &named(&o.minor)?, o.witness)),
            None => b.cert(Certificate::Graphic { matroid: m.clone() }),
        }
        match c.obstruction {
            Some(o) => b.cert(Certificate::minor(&m, &named(&o.minor)?, o.witness)),
            None => b.cert(Certificate::Graphic { matroid: m.dual() }),
        }
        b.note(format!("{name}: graphic={} cographic={}", g.holds, c.holds));
    }
    Ok(b.finish())
}

fn excluded_names(k: usize) -> Vec<String> {
    match k {
        2 => vec!["M(G1)".into(), "M(G2)".into()],
        3 => (1..=7).map(|i| format!("M(F{i})")).collect(),
        _ => Vec::new(),
    }
}

/// Certificate that some `k`-splitting of `m` is non-graphic, if one exists.
fn split_witness(m: &BinaryMatroid, k: usize) -> Result<Option<Certificate>> {
    Ok(match first_nongraphic_split(m, k)? {
        Membership::Member => None,
        Membership::Witness { set, obstruction } => Some(Certificate::NonGraphicSplit {
            matroid: m.clone(),
            set,
            obstruction: named(&obstruction.minor)?,
            witness: obstruction.witness,
        }),
    })
}

fn minor_name(m: &BinaryMatroid, i: usize) -> String {
    if i < m.len() {
        format!("{}\\{}", m.name(), m.label(i))
    } else {
        format!("{}/{}", m.name(), m.label(i - m.len()))
    }
}

fn necessity(k: usize) -> Result<VerificationReport> {
    let mut b = Builder::new(&format!("theorem:C{k}-necessity"));
    for name in excluded_names(k) {
        let m = named(&name)?;
        match split_witness(&m, k)? {
            Some(c) => b.cert(c),
            None => b.require(false, format!("every {k}-splitting of {name} is graphic")),
        }
        // Minor-minimal: every single-element deletion and contraction has
        // only graphic k-splittings.
        let minors = single_element_minors(&m);
        let results: Vec<Result<bool>> = minors
            .par_iter()
            .map(|n| {
                if n.len() < k {
                    Ok(true)
                } else {
                    first_nongraphic_split(n, k).map(|r| r.is_member())
                }
            })
            .collect();
        let mut minimal = true;
        for (i, (n, r)) in minors.iter().zip(results).enumerate() {
            let member = r?;
            minimal &= member;
            if member {
                b.cert(Certificate::SplitsGraphic {
                    matroid: n.clone().with_name(minor_name(&m, i)),
                    k,
                });
            } else {
                b.note(format!(
                    "{} also has a non-graphic {k}-splitting",
                    minor_name(&m, i)
                ));
            }
        }
        b.require(minimal, format!("{name} is not minor-minimal"));
        let cographic = is_cographic(&m)?;
        match cographic.obstruction {
            None => {
                b.require(
                    is_minimal_excluded(&m, k)?,
                    format!("{name} is not a minimal excluded minor for C{k}"),
                );
            }
            Some(o) => {
                let t = named(&o.minor)?;
                b.note(format!(
                    "{name} is not cographic (it has an {} minor), so it lies outside every C_k by definition; minimality is checked over all single-element minors",
                    o.minor
                ));
                b.cert(Certificate::minor(&m, &t, o.witness));
            }
        }
    }
    Ok(b.finish())
}

fn sufficiency(k: usize, max_edges: usize) -> Result<VerificationReport> {
    let mut b = Builder::new(&format!("theorem:C{k}-sufficiency"));
    let corpus = cographic_corpus(max_edges)?;
    let targets: Vec<MinorTarget> = excluded_names(k)
        .iter()
        .map(|n| named(n).and_then(|m| MinorTarget::new(&m)))
        .collect::<Result<_>>()?;
    let checked: Vec<&BinaryMatroid> = corpus.iter().filter(|m| m.len() >= k).collect();
    b.cert(Certificate::Count {
        what: format!(
            "cographic matroids from connected multigraphs with at most {max_edges} edges"
        ),
        value: corpus.len(),
    });
    b.cert(Certificate::Count {
        what: format!("of which have at least {k} elements"),
        value: checked.len(),
    });
    let rows: Vec<Result<(Option<Certificate>, Vec<Certificate>)>> = checked
        .par_iter()
        .map(|m| {
            let split_cert = split_witness(m, k)?;
            let mut minor_certs = Vec::new();
            for t in &targets {
                match t.find_in(m)? {
                    Some(w) => {
                        minor_certs.push(Certificate::minor(m, t.matroid(), w));
                        break;
                    }
                    None => minor_certs.push(Certificate::NoMinor {
                        host: (*m).clone(),
                        target: t.matroid().clone(),
                    }),
                }
            }
            Ok((split_cert, minor_certs))
        })
        .collect();
    let mut counterexamples = 0;
    let mut nonmembers = 0;
    for (m, row) in checked.iter().zip(rows) {
        let (split_cert, minor_certs) = row?;
        let has_excluded = minor_certs
            .iter()
            .any(|c| matches!(c, Certificate::Minor { .. }));
        let member = split_cert.is_none();
        if !member {
            nonmembers += 1;
        }
        if member == has_excluded {
            counterexamples += 1;
            b.note(format!(
                "counterexample {}: member of C{k} = {member}, has an excluded minor = {has_excluded}",
                m.name()
            ));
        }
        match split_cert {
            Some(c) => b.cert(c),
            None => b.cert(Certificate::SplitsGraphic {
                matroid: (*m).clone(),
                k,
            }),
        }
        b.evidence.extend(minor_certs);
    }
    b.note(format!(
        "{} matroids checked, {nonmembers} outside C{k}, {counterexamples} counterexamples",
        checked.len()
    ));
    b.require(
        counterexamples == 0,
        format!("{counterexamples} counterexamples"),
    );
    Ok(b.finish())
}

fn remark_c1(max_edges: usize) -> Result<VerificationReport> {
    let mut b = Builder::new("remark:C1");
    let mut corpus = cographic_corpus(max_edges)?;
    corpus.extend([named("M*(K5)")?, named("M*(K33)")?]);
    let rows: Vec<Result<Option<Certificate>>> = corpus
        .par_iter()
        .map(|m| {
            if m.is_empty() {
                Ok(None)
            } else {
                split_witness(m, 1)
            }
        })
        .collect();
    let mut bad = 0;
    for (m, row) in corpus.iter().zip(rows) {
        match row? {
            Some(c) => {
                bad += 1;
                b.note(format!(
                    "{} has a non-graphic singleton splitting",
                    m.name()
                ));
                b.cert(c);
            }
            None => b.cert(Certificate::SplitsGraphic {
                matroid: m.clone(),
                k: 1,
            }),
        }
    }
    b.note(format!(
        "{} cographic matroids checked, {bad} with a non-graphic singleton splitting",
        corpus.len()
    ));
    b.require(bad == 0, format!("{bad} counterexamples"));
    Ok(b.finish())
}

/// Which clauses of the structure statement hold for one non-member.
fn structure_clauses(m: &BinaryMatroid, k: usize, b: &mut Builder) -> Result<bool> {
    let mut fired = Vec::new();
    // (i) an extension of a catalogued minimal minor outside C_{k-1}.
    let minimal: Vec<String> = excluded_names(k - 1);
    for name in &minimal {
        let e = named(name)?;
        let extensions = dedupe_by_signature(single_extensions(&e).map(|x| x.matroid).collect());
        for (i, p) in extensions.into_iter().enumerate() {
            let p = p.with_name(format!("{name}+z[{i}]"));
            if let Some(w) = has_minor(m, &p)? {
                let z = p.len() - 1;
                let base = p.delete(GroundSubset::from_indices([z]));
                let map = base
                    .is_isomorphic(&e)?
                    .expect("extension of the minimal minor");
                b.cert(Certificate::minor(m, &p, w));
                b.cert(Certificate::Isomorphic {
                    from: base.with_name(format!("{}\\{}", p.name(), p.label(z))),
                    to: e.clone(),
                    map,
                });
                fired.push(format!("(i) via {name}"));
                break;
            }
        }
        if fired.iter().any(|f| f.starts_with("(i)")) {
            break;
        }
    }
    // (ii) an M(Q_i) minor, and (iii) a coextension of it by at most k elements.
    for i in 1..=9 {
        let q = named(&format!("M(Q{i})"))?;
        let Some(w) = has_minor(m, &q)? else { continue };
        b.cert(Certificate::minor(m, &q, w.clone()));
        fired.push(format!("(ii) M(Q{i})"));
        let x: Vec<String> = w.contracted.iter().take(k).cloned().collect();
        if !x.is_empty() {
            let kept: Vec<String> = w.contracted[x.len()..].to_vec();
            let outer = MinorWitness {
                deleted: w.deleted.clone(),
                contracted: kept,
            };
            let p = outer.apply(m)?.with_name(format!("P[{}]", m.name()));
            b.cert(Certificate::minor(m, &p, outer));
            b.cert(Certificate::minor(
                &p,
                &q,
                MinorWitness {
                    deleted: Vec::new(),
                    contracted: x.clone(),
                },
            ));
            fired.push(format!("(iii) coextension of M(Q{i}) by {}", x.len()));
        }
        break;
    }
    b.note(format!(
        "{}: {}",
        m.name(),
        if fired.is_empty() {
            "no clause holds".to_string()
        } else {
            fired.join("; ")
        }
    ));
    Ok(!fired.is_empty())
}

fn structure(k: usize, max_edges: usize) -> Result<VerificationReport> {
    let mut b = Builder::new(&format!("theorem:structure-k{k}"));
    if !(2..=3).contains(&k) {
        return Err(Error::Invalid(format!(
            "structure check supports k = 2 or 3, not {k}"
        )));
    }
    if k == 2 {
        b.note("clause (i) needs minimal minors outside C_1; none are catalogued, so only (ii) and (iii) are searched");
    }
    let mut candidates: Vec<BinaryMatroid> = catalog::index()
        .into_iter()
        .map(named)
        .collect::<Result<_>>()?;
    candidates.extend(cographic_corpus(max_edges)?);
    let mut nonmembers = Vec::new();
    for m in candidates {
        if m.len() < k || !is_cographic(&m)?.holds {
            continue;
        }
        if let Some(c) = split_witness(&m, k)? {
            nonmembers.push((m, c));
        }
    }
    b.cert(Certificate::Count {
        what: format!("cographic non-members of C{k} (catalog and corpus up to {max_edges} edges)"),
        value: nonmembers.len(),
    });
    for (m, c) in nonmembers {
        b.cert(c);
        let ok = structure_clauses(&m, k, &mut b)?;
        b.require(ok, format!("no clause holds for {}", m.name()));
    }
    Ok(b.finish())
}

fn quotient_gate(id: &str, sources: &[(&str, &[&str])]) -> Result<VerificationReport> {
    let mut b = Builder::new(id);
    for (source, names) in sources {
        let f = named(source)?;
        let classes = distinct_quotients(&f);
        let (certs, found, _) = match_quotients(&f, &classes, names)?;
        b.evidence.extend(certs);
        for name in names.iter() {
            b.require(
                found.iter().any(|x| x == name),
                format!("{name} is not an elementary quotient of {source}"),
            );
        }
    }
    Ok(b.finish())
}

fn gate_a() -> Result<VerificationReport> {
    quotient_gate("gate:a", &[("F7*", &["M(Q1)", "M(Q2)"])])
}

fn gate_b() -> Result<VerificationReport> {
    quotient_gate("gate:b", &[("F7", &["M(Q3)"])])
}

fn gate_c() -> Result<VerificationReport> {
    quotient_gate(
        "gate:c",
        &[
            ("M*(K33)", &["M(Q4)", "M(Q5)"]),
            ("M*(K5)", &["M(Q6)", "M(Q7)", "M(Q8)", "M(Q9)"]),
        ],
    )
}

fn gate_d() -> Result<VerificationReport> {
    let mut b = Builder::new("gate:d");
    for (a, c) in [("M(F1)", "M(Q1)"), ("M(F2)", "M(Q2)"), ("M*(F1)", "M(F1*)")] {
        let (a, c) = (named(a)?, named(c)?);
        match a.is_isomorphic(&c)? {
            Some(map) => b.cert(Certificate::Isomorphic {
                from: a,
                to: c,
                map,
            }),
            None => b.require(
                false,
                format!("{} is not isomorphic to {}", a.name(), c.name()),
            ),
        }
    }
    Ok(b.finish())
}

fn gate_e() -> Result<VerificationReport> {
    let mut b = Builder::new("gate:e");
    for i in 1..=7 {
        let m = named(&format!("M(F{i})"))?;
        let v = is_cographic(&m)?;
        match v.obstruction {
            None => b.cert(Certificate::Graphic { matroid: m.dual() }),
            Some(o) => {
                b.cert(Certificate::minor(&m, &named(&o.minor)?, o.witness));
                b.require(
                    false,
                    format!("{} is not cographic: it has an {} minor", m.name(), o.minor),
                );
            }
        }
    }
    for i in 1..=9 {
        let m = named(&format!("M(Q{i})"))?;
        let v = is_graphic(&m)?;
        match v.obstruction {
            None => b.cert(Certificate::Graphic { matroid: m }),
            Some(o) => {
                b.cert(Certificate::minor(&m, &named(&o.minor)?, o.witness));
                b.require(false, format!("{} is not graphic", m.name()));
            }
        }
    }
    Ok(b.finish())
}

fn gate_f() -> Result<VerificationReport> {
    let mut b = Builder::new("gate:f");
    let g1 = named("M(G1)")?;
    let f4 = named("M(F4)")?;
    let f7 = named("M(F7)")?;
    let f1 = named("M(F1)")?;
    let f2 = named("M(F2)")?;
    for ext in single_extensions(&g1) {
        let n = ext.matroid.with_name(format!("M(G1)+z[{}]", ext.column));
        let cographic = is_cographic(&n)?;
        if let Some(o) = cographic.obstruction {
            // Only cographic extensions can occur inside a cographic matroid.
            b.cert(Certificate::minor(&n, &named(&o.minor)?, o.witness));
            b.note(format!(
                "{} is not cographic ({} minor) and is set aside",
                n.name(),
                o.minor
            ));
            continue;
        }
        let mut ok = false;
        for t in [&f4, &f7] {
            if let Some(map) = n.is_isomorphic(t)? {
                b.cert(Certificate::Isomorphic {
                    from: n.clone(),
                    to: t.clone(),
                    map,
                });
                ok = true;
                break;
            }
        }
        if !ok {
            for t in [&f1, &f2] {
                if let Some(w) = has_minor(&n, t)? {
                    b.cert(Certificate::minor(&n, t, w));
                    ok = true;
                    break;
                }
            }
        }
        b.require(
            ok,
            format!(
                "{} is neither M(F4), M(F7) nor has an M(F1) or M(F2) minor",
                n.name()
            ),
        );
    }
    let g2 = named("M(G2)")?;
    match has_minor(&g2, &f2)? {
        Some(w) => b.cert(Certificate::minor(&g2, &f2, w)),
        None => b.require(false, "M(G2) has no M(F2) minor"),
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_sorted_and_unique() {
        let mut sorted = STATEMENTS.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, STATEMENTS);
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(
            run("lemma:nope", &Options::default()),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn quotient_report_replays() {
        let r = run("lemma:qF7star", &Options::default()).unwrap().remove(0);
        assert!(r.passed());
        assert!(r.replay().unwrap());
        assert_eq!(
            r.tsv_line(),
            format!("lemma:qF7star\tpass\t{}", r.evidence.len())
        );
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let r = run("embedding:Q1-MK5star", &Options::default())
            .unwrap()
            .remove(0);
        let mut c = r.evidence[0].clone();
        if let Certificate::Minor { witness, .. } = &mut c {
            let x = witness.contracted.pop().unwrap();
            witness.deleted.push(x);
        }
        assert!(!c.replay().unwrap());
    }

    #[test]
    fn eulerian_report() {
        let r = run("lemma:eulerian", &Options::default())
            .unwrap()
            .remove(0);
        assert!(r.passed());
        assert!(r.replay().unwrap());
    }

    #[test]
    fn small_corpus_sufficiency() {
        let r = sufficiency(2, 6).unwrap();
        assert!(r.passed());
        assert!(r.replay().unwrap());
    }
}
