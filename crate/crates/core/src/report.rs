//! The serialisable analysis report.
//!
//! Every section is a plain data record with exact values as strings, so a
//! report parses back into the same structure. [`AnalysisReport::validate`]
//! re-checks the cross-section invariants before output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::central::{central_eligible, central_generators_seeded, central_rank, is_cut};
use crate::error::{Error, ErrorKind, Result};
use crate::group::subgroup::is_nilpotent;
use crate::group::{
    center, commutator_subgroup, conjugacy_classes, cyclic_subgroup_class_count, k_classes, FieldTag,
    FiniteGroup, Subgroup,
};
use crate::idempotents::{pci_strongly_monomial, PciSet, Provenance};
use crate::ring::{Coefficient, GroupRingElement};
use crate::units::{
    bicyclic_is_trivial, jespers_leal_generators, jespers_parmenter_obstruction, marciniak_sehgal_pair,
    CertifiedUnit, UnitKind,
};
use crate::wedderburn::predicates::{exceptional_state, free_by_free_state};
use crate::wedderburn::{
    decomposition_from, decomposition_string, higman_finite_units, virtually_free_product_abelian, Component, TriState,
};

/// Units are constructed and certified only up to this order.
pub const UNIT_EMISSION_BOUND: usize = 32;
/// Unit coefficients are written out only up to this order.
pub const EXPLICIT_TERMS_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub element: String,
    pub coeff: String,
}

fn terms_of<C: Coefficient>(x: &GroupRingElement<C>) -> Vec<Term> {
    let g = x.group();
    x.terms()
        .iter()
        .map(|(&e, c)| Term {
            element: g.label(e),
            coeff: c.to_string(),
        })
        .collect()
}

fn labels(g: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.members().iter().map(|&x| g.label(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    /// `catalog` or `file`.
    pub source: String,
    pub name: String,
    pub seed: u64,
    pub max_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    pub exponent: usize,
    pub abelian: bool,
    pub nilpotent: bool,
    pub conjugacy_classes: usize,
    pub inverse_closed_classes: usize,
    pub rational_classes: usize,
    pub cyclic_subgroup_classes: usize,
    pub center: Vec<String>,
    pub derived_subgroup: Vec<String>,
}

impl GroupSummary {
    pub fn of(g: &FiniteGroup) -> Self {
        let cc = conjugacy_classes(g);
        GroupSummary {
            order: g.order(),
            exponent: g.exponent(),
            abelian: g.is_abelian(),
            nilpotent: is_nilpotent(g),
            conjugacy_classes: cc.class_count(),
            inverse_closed_classes: cc.real_closed_count,
            rational_classes: k_classes(g, FieldTag::Rational).classes.len(),
            cyclic_subgroup_classes: cyclic_subgroup_class_count(g),
            center: labels(g, &center(g)),
            derived_subgroup: labels(g, &commutator_subgroup(g)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentEntry {
    /// `ABELIAN_EPSILON` or `STRONG_SHODA`.
    pub provenance: String,
    pub h: Vec<String>,
    pub k: Vec<String>,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentsSection {
    pub count: usize,
    pub complete: bool,
    pub certified_strongly_monomial: bool,
    pub entries: Vec<IdempotentEntry>,
}

impl IdempotentsSection {
    fn of(g: &FiniteGroup, pci: &PciSet) -> Self {
        let entries = pci
            .provenance
            .iter()
            .zip(&pci.idempotents)
            .map(|(p, e)| {
                let (h, k) = p.pair(g);
                IdempotentEntry {
                    provenance: match p {
                        Provenance::AbelianEpsilon { .. } => "ABELIAN_EPSILON",
                        Provenance::StrongShoda { .. } => "STRONG_SHODA",
                    }
                    .into(),
                    h: labels(g, &h),
                    k: labels(g, &k),
                    terms: terms_of(e),
                }
            })
            .collect();
        IdempotentsSection {
            count: pci.idempotents.len(),
            complete: pci.complete,
            certified_strongly_monomial: pci.certified_strongly_monomial,
            entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTerm {
    pub coset: String,
    pub residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub name: String,
    pub kind: String,
    pub h_subgroup: Vec<String>,
    pub k_subgroup: Vec<String>,
    pub n: usize,
    pub h: usize,
    pub quotient_order: usize,
    pub action: Vec<ActionTerm>,
    pub twisting: Vec<Vec<u64>>,
    pub center: String,
    pub center_degree: usize,
    pub dimension: usize,
    pub exceptional: String,
    pub totally_definite_quaternion: Option<bool>,
    pub faithful: bool,
}

fn upper_snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v).expect("serialisable") {
        serde_json::Value::String(s) => s,
        serde_json::Value::Object(m) => m.get("type").and_then(|t| t.as_str()).unwrap_or_default().to_string(),
        other => other.to_string(),
    }
}

impl ComponentEntry {
    fn of(g: &FiniteGroup, c: &Component) -> Self {
        let d = &c.descriptor;
        let center = crate::wedderburn::FieldDesc::fixed_field(d.h as u64, &d.center_fixing);
        ComponentEntry {
            name: c.classification.name.clone(),
            kind: upper_snake(&c.classification.kind),
            h_subgroup: labels(g, &d.h_subgroup),
            k_subgroup: labels(g, &d.k_subgroup),
            n: d.n,
            h: d.h,
            quotient_order: d.quotient_order,
            action: d
                .action
                .iter()
                .map(|a| ActionTerm {
                    coset: a.label.clone(),
                    residue: a.residue,
                })
                .collect(),
            twisting: d.twisting.clone(),
            center: center.name(),
            center_degree: d.center_degree,
            dimension: d.dimension,
            exceptional: upper_snake(&c.classification.exceptional),
            totally_definite_quaternion: c.classification.totally_definite_quaternion,
            faithful: d.faithful,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedderburnSection {
    pub decomposition: String,
    pub dimension_sum: usize,
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitEntry {
    pub kind: String,
    pub params: String,
    pub sign: i8,
    pub normalized: bool,
    pub trivial: bool,
    pub max_coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_terms: Option<Vec<Term>>,
}

fn describe(g: &FiniteGroup, k: &UnitKind) -> String {
    let l = |x: &usize| g.label(*x);
    match k {
        UnitKind::Trivial => String::new(),
        UnitKind::Bass { g: x, k, m } => format!("g={}, k={k}, m={m}", l(x)),
        UnitKind::Alternating { g: x, k, m } => format!("g={}, k={k}, m={m}", l(x)),
        UnitKind::BicyclicLeft { h, g: x } => format!("h={}, g={}", l(h), l(x)),
        UnitKind::BicyclicRight { g: x, h } => format!("g={}, h={}", l(x), l(h)),
        UnitKind::GenBicyclic { x, side, e } => format!("x={}, side={side:?}, e={e}", l(x)),
        UnitKind::CentralAveraged { g: x, base } => format!("g={}, base={} ({})", l(x), upper_snake(base.as_ref()), describe(g, base)),
    }
}

impl UnitEntry {
    fn of(g: &FiniteGroup, u: &CertifiedUnit) -> Self {
        let explicit = g.order() <= EXPLICIT_TERMS_BOUND;
        UnitEntry {
            kind: upper_snake(&u.kind),
            params: describe(g, &u.kind),
            sign: u.sign,
            normalized: u.normalized,
            trivial: u.is_trivial(),
            max_coeff: u.u.max_abs_coeff().to_string(),
            terms: explicit.then(|| terms_of(&u.u)),
            inverse_terms: explicit.then(|| terms_of(&u.u_inv)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreePairEntry {
    pub g: String,
    pub h: String,
    pub trace_value: String,
    pub threshold: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionEntry {
    pub status: String,
    pub is_2_group: bool,
    pub epimorphisms_checked: usize,
    pub lacking: Vec<String>,
    pub kernel: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitsSection {
    /// Whether units were constructed (order at most [`UNIT_EMISSION_BOUND`]).
    pub emitted: bool,
    pub counts: BTreeMap<String, usize>,
    pub nontrivial_bicyclic_pairs: usize,
    pub generators: Vec<UnitEntry>,
    pub free_pairs: Vec<FreePairEntry>,
    pub jespers_parmenter: ObstructionEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralSection {
    pub c: usize,
    pub c_prime: usize,
    pub d: usize,
    pub rank: usize,
    pub abelian_formula_rank: Option<usize>,
    pub r_real: usize,
    pub r_rational: usize,
    pub cut: bool,
    pub eligible: bool,
    pub generators: Vec<UnitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicatesSection {
    pub higman_finite_units: bool,
    pub cut: bool,
    pub hfa: String,
    pub virtually_free_product_abelian: bool,
    pub virtually_free_by_free: String,
    pub has_exceptional: String,
    pub jespers_parmenter: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub input: InputEcho,
    pub group_summary: GroupSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<IdempotentsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wedderburn: Option<WedderburnSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<CentralSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicates: Option<PredicatesSection>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sections {
    pub idempotents: bool,
    pub wedderburn: bool,
    pub units: bool,
    pub central: bool,
    pub predicates: bool,
}

impl Sections {
    pub fn all() -> Self {
        Sections {
            idempotents: true,
            wedderburn: true,
            units: true,
            central: true,
            predicates: true,
        }
    }

    pub fn none() -> Self {
        Sections {
            idempotents: false,
            wedderburn: false,
            units: false,
            central: false,
            predicates: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub sections: Sections,
    pub seed: u64,
    pub timings: bool,
    /// Propagate section failures instead of recording them as warnings.
    pub strict: bool,
}

struct Builder {
    strict: bool,
    warnings: Vec<String>,
    timings: BTreeMap<String, f64>,
}

impl Builder {
    fn run<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<Option<T>> {
        let start = Instant::now();
        let r = f();
        self.timings.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if self.strict || e.kind() == ErrorKind::Internal => Err(e),
            Err(e) => {
                self.warnings.push(format!("{name}: {e}"));
                Ok(None)
            }
        }
    }
}

fn units_section(g: &Arc<FiniteGroup>) -> Result<UnitsSection> {
    let nontrivial_bicyclic_pairs = g
        .elements()
        .flat_map(|x| g.elements().map(move |h| (h, x)))
        .filter(|&(h, x)| !bicyclic_is_trivial(g, h, x))
        .count();
    let jp = jespers_parmenter_obstruction(g)?;
    let jespers_parmenter = ObstructionEntry {
        status: upper_snake(&jp.status),
        is_2_group: jp.is_2_group,
        epimorphisms_checked: jp.epimorphisms_checked,
        lacking: jp.witness.as_ref().map(|w| w.lacking.clone()).unwrap_or_default(),
        kernel: jp
            .witness
            .as_ref()
            .map(|w| w.kernel.iter().map(|&x| g.label(x)).collect())
            .unwrap_or_default(),
    };
    let emitted = g.order() <= UNIT_EMISSION_BOUND;
    let mut counts = BTreeMap::new();
    let mut generators = Vec::new();
    let mut free_pairs = Vec::new();
    if emitted {
        let units = jespers_leal_generators(g)?;
        for u in &units {
            *counts.entry(upper_snake(&u.kind)).or_insert(0) += 1;
            if let UnitKind::BicyclicLeft { h, g: x } = u.kind {
                let (_, _, cert) = marciniak_sehgal_pair(g, h, x)?;
                free_pairs.push(FreePairEntry {
                    g: g.label(h),
                    h: g.label(x),
                    trace_value: cert.trace_value.to_string(),
                    threshold: cert.threshold.to_string(),
                });
            }
        }
        generators = units.iter().map(|u| UnitEntry::of(g, u)).collect();
    }
    Ok(UnitsSection {
        emitted,
        counts,
        nontrivial_bicyclic_pairs,
        generators,
        free_pairs,
        jespers_parmenter,
    })
}

fn central_section(g: &Arc<FiniteGroup>, seed: u64, warnings: &mut Vec<String>) -> Result<CentralSection> {
    let r = central_rank(g)?;
    let cut = is_cut(g);
    let eligible = central_eligible(g);
    let mut generators = Vec::new();
    if eligible && g.order() <= UNIT_EMISSION_BOUND {
        let gens = central_generators_seeded(g, seed)?;
        if !gens.count_at_least_rank {
            warnings.push(format!(
                "central: {} averaged Bass units for rank {}",
                gens.units.len(),
                gens.rank
            ));
        }
        generators = gens.units.iter().map(|u| UnitEntry::of(g, u)).collect();
    }
    Ok(CentralSection {
        c: r.c,
        c_prime: r.c_prime,
        d: r.d,
        rank: r.rank,
        abelian_formula_rank: r.abelian_formula_rank,
        r_real: r.r_real,
        r_rational: r.r_rational,
        cut,
        eligible,
        generators,
    })
}

/// Assembles the requested sections for `g`.
pub fn build_report(g: &Arc<FiniteGroup>, input: InputEcho, opts: &ReportOptions) -> Result<AnalysisReport> {
    let s = opts.sections;
    let mut b = Builder {
        strict: opts.strict,
        warnings: Vec::new(),
        timings: BTreeMap::new(),
    };
    let group_summary = GroupSummary::of(g);
    let need_components = s.wedderburn || s.predicates;
    let pci = if s.idempotents || need_components {
        b.run("idempotents", || pci_strongly_monomial(g))?
    } else {
        None
    };
    let comps = match (&pci, need_components) {
        (Some(p), true) => b.run("wedderburn", || decomposition_from(g, p))?,
        _ => None,
    };
    let idempotents = pci.as_ref().filter(|_| s.idempotents).map(|p| IdempotentsSection::of(g, p));
    let wedderburn = comps.as_ref().filter(|_| s.wedderburn).map(|cs| WedderburnSection {
        decomposition: decomposition_string(cs),
        dimension_sum: cs.iter().map(|c| c.descriptor.dimension).sum(),
        components: cs.iter().map(|c| ComponentEntry::of(g, c)).collect(),
    });
    let units = if s.units { b.run("units", || units_section(g))? } else { None };
    let central = if s.central {
        let seed = opts.seed;
        let mut w = Vec::new();
        let r = b.run("central", || central_section(g, seed, &mut w))?;
        b.warnings.extend(w);
        r
    } else {
        None
    };
    let predicates = if s.predicates {
        b.run("predicates", || {
            let cut = is_cut(g);
            let exc = comps.as_deref().map_or(TriState::Unknown, exceptional_state);
            let fbf = comps.as_deref().map_or(TriState::Unknown, free_by_free_state);
            Ok(PredicatesSection {
                higman_finite_units: higman_finite_units(g),
                cut,
                hfa: TriState::from(cut).and(exc.not()).to_string(),
                virtually_free_product_abelian: virtually_free_product_abelian(g)?,
                virtually_free_by_free: fbf.to_string(),
                has_exceptional: exc.to_string(),
                jespers_parmenter: upper_snake(&jespers_parmenter_obstruction(g)?.status),
            })
        })?
    } else {
        None
    };
    let report = AnalysisReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input,
        group_summary,
        idempotents,
        wedderburn,
        units,
        central,
        predicates,
        warnings: b.warnings,
        timings_ms: opts.timings.then_some(b.timings),
    };
    report.validate()?;
    Ok(report)
}

impl AnalysisReport {
    /// Cross-section consistency: dimension count, number of components,
    /// and cut iff rank 0.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invariant(m));
        let sum = &self.group_summary;
        if let Some(w) = &self.wedderburn {
            if w.dimension_sum != sum.order || w.components.iter().map(|c| c.dimension).sum::<usize>() != sum.order {
                return bad(format!("component dimensions sum to {}, not {}", w.dimension_sum, sum.order));
            }
            if w.components.len() != sum.cyclic_subgroup_classes {
                return bad(format!(
                    "{} components but {} classes of cyclic subgroups",
                    w.components.len(),
                    sum.cyclic_subgroup_classes
                ));
            }
        }
        if let Some(i) = &self.idempotents {
            if i.certified_strongly_monomial && i.count != sum.cyclic_subgroup_classes {
                return bad("certified idempotent count differs from d".into());
            }
        }
        if let Some(c) = &self.central {
            if c.cut != (c.rank == 0) || 2 * (c.rank + c.d) != c.c + c.c_prime {
                return bad("central rank and cut flag disagree".into());
            }
            if let Some(p) = &self.predicates {
                if p.cut != c.cut {
                    return bad("cut flag differs between sections".into());
                }
            }
        }
        if let Some(u) = &self.units {
            if u.free_pairs.iter().any(|f| {
                let t: crate::arith::Rational = f.trace_value.parse().expect("rational");
                let th: crate::arith::Rational = f.threshold.parse().expect("rational");
                num_traits::Signed::abs(&t) < th
            }) {
                return bad("free pair certificate below threshold".into());
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let s = &self.group_summary;
        let _ = writeln!(o, "group {} ({}), order {}", self.input.name, self.input.source, s.order);
        let _ = writeln!(
            o,
            "  exponent {}, abelian {}, nilpotent {}",
            s.exponent, s.abelian, s.nilpotent
        );
        let _ = writeln!(
            o,
            "  classes {}, inverse-closed {}, rational {}, cyclic subgroup classes {}",
            s.conjugacy_classes, s.inverse_closed_classes, s.rational_classes, s.cyclic_subgroup_classes
        );
        let _ = writeln!(o, "  centre {{{}}}", s.center.join(", "));
        let _ = writeln!(o, "  derived subgroup {{{}}}", s.derived_subgroup.join(", "));
        if let Some(i) = &self.idempotents {
            let _ = writeln!(
                o,
                "idempotents: {} (complete {}, certified {})",
                i.count, i.complete, i.certified_strongly_monomial
            );
            for e in &i.entries {
                let body: Vec<String> = e.terms.iter().map(|t| format!("{}*{}", t.coeff, t.element)).collect();
                let _ = writeln!(
                    o,
                    "  {} H={{{}}} K={{{}}}: {}",
                    e.provenance,
                    e.h.join(","),
                    e.k.join(","),
                    body.join(" + ")
                );
            }
        }
        if let Some(w) = &self.wedderburn {
            let _ = writeln!(o, "QG = {}", w.decomposition);
            for c in &w.components {
                let _ = writeln!(
                    o,
                    "  {}: {} n={} h={} |N/H|={} centre {} dim {} exceptional {}",
                    c.name, c.kind, c.n, c.h, c.quotient_order, c.center, c.dimension, c.exceptional
                );
            }
        }
        if let Some(u) = &self.units {
            let counts: Vec<String> = u.counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
            let _ = writeln!(
                o,
                "units: emitted {}, {} (nontrivial bicyclic pairs {})",
                u.emitted,
                counts.join(", "),
                u.nontrivial_bicyclic_pairs
            );
            let _ = writeln!(o, "  free pair certificates: {}", u.free_pairs.len());
            let _ = writeln!(
                o,
                "  Jespers-Parmenter obstruction: {}{}",
                u.jespers_parmenter.status,
                if u.jespers_parmenter.lacking.is_empty() {
                    String::new()
                } else {
                    format!(" (lacking {})", u.jespers_parmenter.lacking.join(", "))
                }
            );
        }
        if let Some(c) = &self.central {
            let _ = writeln!(
                o,
                "central units: rank {} = ({} + {})/2 - {}, cut {}, eligible {}, generators {}",
                c.rank,
                c.c,
                c.c_prime,
                c.d,
                c.cut,
                c.eligible,
                c.generators.len()
            );
        }
        if let Some(p) = &self.predicates {
            let _ = writeln!(o, "predicates:");
            let _ = writeln!(o, "  higman (finite units): {}", p.higman_finite_units);
            let _ = writeln!(o, "  cut: {}", p.cut);
            let _ = writeln!(o, "  hfa: {}", p.hfa);
            let _ = writeln!(o, "  virtually free product of abelian: {}", p.virtually_free_product_abelian);
            let _ = writeln!(o, "  virtually free-by-free: {}", p.virtually_free_by_free);
            let _ = writeln!(o, "  exceptional components: {}", p.has_exceptional);
            let _ = writeln!(o, "  Jespers-Parmenter: {}", p.jespers_parmenter);
        }
        for w in &self.warnings {
            let _ = writeln!(o, "warning: {w}");
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(o, "time {k}: {v:.3} ms");
            }
        }
        o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn report(name: &str) -> AnalysisReport {
        let g = Arc::new(catalog(name).unwrap());
        let input = InputEcho {
            source: "catalog".into(),
            name: name.into(),
            seed: 0,
            max_order: 512,
        };
        let opts = ReportOptions {
            sections: Sections::all(),
            seed: 0,
            timings: false,
            strict: false,
        };
        build_report(&g, input, &opts).unwrap()
    }

    #[test]
    fn d8_report() {
        let r = report("D8");
        assert_eq!(r.wedderburn.as_ref().unwrap().decomposition, "4Q + M2(Q)");
        let p = r.predicates.as_ref().unwrap();
        assert!(p.cut && !p.higman_finite_units && p.hfa == "FALSE");
        assert!(r.to_text().contains("QG = 4Q + M2(Q)"));
    }

    #[test]
    fn json_round_trip_is_identical() {
        let r = report("Q8");
        let text = r.to_json();
        let back = AnalysisReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn deterministic() {
        assert_eq!(report("S3").to_json(), report("S3").to_json());
    }
}
