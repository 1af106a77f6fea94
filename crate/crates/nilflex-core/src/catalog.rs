//! Embedded classification catalog and the end-to-end analysis pipeline.
//!
//! The six-dimensional catalog lists all 34 nilpotent Lie algebras with
//! their expected Betti numbers, step data, harmonic value sets, moduli
//! dimensions and reducibility tags, ordered lexicographically by
//! (b1, b2, 6−s). The five entries whose harmonic numbers vary carry the
//! explicit degree-two basis in which their nondegeneracy polynomial is
//! usually written, together with the parameter strata on which the
//! Lefschetz ranks drop. `run_entry` drives the full pipeline for one
//! algebra and `verify_all` regression-tests every expected value.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{parse_spec, NilpotentLieAlgebra};
use crate::cohomology::CohomologyRing;
use crate::error::{Error, Result};
use crate::forms::{mask_of_indices, KForm};
use crate::harmonic::FixedSymplecticForm;
use crate::matrix::Matrix;
use crate::poly::{var_index, MultiPoly};
use crate::rational::{format_rational, rat_int, Rational};
use crate::symplectic::{
    Constraint, FlexibilityCertificate, SampleConfig, SymplecticFamily,
};

/// One row of the six-dimensional catalog.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub structure: &'static str,
    pub b1: usize,
    pub b2: usize,
    pub six_minus_s: usize,
    /// Dimensions of the irreducible summands when the algebra is reducible.
    pub oplus: Option<&'static str>,
    /// Expected h4 values over all symplectic forms; None for non-symplectic rows.
    pub h4: Option<&'static [usize]>,
    pub h5: Option<&'static [usize]>,
    pub moduli: Option<usize>,
    /// Explicit 2-cocycle basis of H² (entry grammar per cocycle).
    pub family_basis: Option<&'static [&'static str]>,
    /// Parameter strata on which a Lefschetz rank drops.
    pub strata: &'static [&'static [&'static str]],
}

impl CatalogEntry {
    pub fn symplectic(&self) -> bool {
        self.h4.is_some()
    }
}

/// The 34 six-dimensional nilpotent Lie algebras.
pub fn catalog6() -> Vec<CatalogEntry> {
    fn row(
        structure: &'static str,
        b1: usize,
        b2: usize,
        six_minus_s: usize,
        oplus: Option<&'static str>,
        h4: Option<&'static [usize]>,
        h5: Option<&'static [usize]>,
        moduli: Option<usize>,
    ) -> CatalogEntry {
        CatalogEntry {
            structure,
            b1,
            b2,
            six_minus_s,
            oplus,
            h4,
            h5,
            moduli,
            family_basis: None,
            strata: &[],
        }
    }

    vec![
        row("(0,0,12,13,14+23,34+52)", 2, 2, 1, None, None, None, None),
        row("(0,0,12,13,14,34+52)", 2, 2, 1, None, None, None, None),
        row("(0,0,12,13,14,15)", 2, 3, 1, None, Some(&[3]), Some(&[0]), Some(7)),
        row("(0,0,12,13,14+23,24+15)", 2, 3, 1, None, Some(&[2]), Some(&[0]), Some(7)),
        row("(0,0,12,13,14,23+15)", 2, 3, 1, None, Some(&[2]), Some(&[0]), Some(7)),
        row("(0,0,12,13,23,14)", 2, 4, 2, None, Some(&[4]), Some(&[0]), Some(8)),
        CatalogEntry {
            structure: "(0,0,12,13,23,14-25)",
            b1: 2,
            b2: 4,
            six_minus_s: 2,
            oplus: None,
            h4: Some(&[2, 3, 4]),
            h5: Some(&[0]),
            moduli: Some(8),
            family_basis: Some(&["14", "15+24", "26-34", "16-35"]),
            strata: &[&["C=D"], &["C=D", "A=-2B"]],
        },
        row("(0,0,12,13,23,14+25)", 2, 4, 2, None, Some(&[4]), Some(&[0]), Some(8)),
        row("(0,0,0,12,14-23,15+34)", 3, 4, 2, None, Some(&[2]), Some(&[0]), Some(7)),
        row("(0,0,0,12,14,15+23)", 3, 5, 2, None, Some(&[4]), Some(&[2]), Some(8)),
        CatalogEntry {
            structure: "(0,0,0,12,14,15+23+24)",
            b1: 3,
            b2: 5,
            six_minus_s: 2,
            oplus: None,
            h4: Some(&[3, 4]),
            h5: Some(&[0, 2]),
            moduli: Some(8),
            family_basis: Some(&["13", "15", "23", "16+25-34", "26-45"]),
            strata: &[&["E=0"]],
        },
        row("(0,0,0,12,14,15+24)", 3, 5, 2, Some("1+5"), Some(&[4]), Some(&[2]), Some(8)),
        row("(0,0,0,12,14,15)", 3, 5, 2, Some("1+5"), Some(&[4]), Some(&[2]), Some(8)),
        row("(0,0,0,12,13,14+35)", 3, 5, 3, None, None, None, None),
        row("(0,0,0,12,23,14+35)", 3, 5, 3, None, None, None, None),
        row("(0,0,0,12,23,14-35)", 3, 5, 3, None, None, None, None),
        row("(0,0,0,12,14,24)", 3, 5, 3, Some("1+5"), None, None, None),
        row("(0,0,0,12,13+42,14+23)", 3, 5, 3, None, Some(&[3]), Some(&[0]), Some(8)),
        row("(0,0,0,12,14,13+42)", 3, 5, 3, None, Some(&[3]), Some(&[0]), Some(8)),
        CatalogEntry {
            structure: "(0,0,0,12,13+14,24)",
            b1: 3,
            b2: 5,
            six_minus_s: 3,
            oplus: None,
            h4: Some(&[2, 3]),
            h5: Some(&[0]),
            moduli: Some(8),
            family_basis: Some(&["13", "15", "23", "16+25+34", "26"]),
            strata: &[&["B=1", "E=-3D^2"]],
        },
        row("(0,0,0,12,13,14+23)", 3, 6, 3, None, Some(&[3]), Some(&[0]), Some(9)),
        row("(0,0,0,12,13,24)", 3, 6, 3, None, Some(&[5]), Some(&[0]), Some(9)),
        row("(0,0,0,12,13,14)", 3, 6, 3, None, Some(&[4]), Some(&[0]), Some(9)),
        CatalogEntry {
            structure: "(0,0,0,12,13,23)",
            b1: 3,
            b2: 8,
            six_minus_s: 4,
            oplus: None,
            h4: Some(&[7, 8]),
            h5: Some(&[0]),
            moduli: Some(9),
            family_basis: Some(&["14", "15", "16+25", "16-34", "24", "26", "35", "36"]),
            strata: &[&["H=0", "B=1", "F=C^2+CD+D^2-EG"]],
        },
        row("(0,0,0,0,12,15+34)", 4, 6, 3, None, None, None, None),
        row("(0,0,0,0,12,15)", 4, 7, 3, Some("1+1+4"), Some(&[3]), Some(&[2]), Some(9)),
        row("(0,0,0,0,12,14+25)", 4, 7, 3, Some("1+5"), Some(&[3]), Some(&[2]), Some(9)),
        row("(0,0,0,0,13+42,14+23)", 4, 8, 4, None, Some(&[7]), Some(&[2]), Some(10)),
        row("(0,0,0,0,12,14+23)", 4, 8, 4, None, Some(&[6]), Some(&[2]), Some(10)),
        row("(0,0,0,0,12,34)", 4, 8, 4, Some("3+3"), Some(&[7]), Some(&[2]), Some(10)),
        CatalogEntry {
            structure: "(0,0,0,0,12,13)",
            b1: 4,
            b2: 9,
            six_minus_s: 4,
            oplus: Some("1+5"),
            h4: Some(&[7, 8]),
            h5: Some(&[2]),
            moduli: Some(11),
            family_basis: Some(&["14", "15", "16", "23", "24", "25", "34", "26+35", "36"]),
            strata: &[&["F=1", "I=H^2"]],
        },
        row("(0,0,0,0,0,12+34)", 5, 9, 4, Some("1+5"), None, None, None),
        row("(0,0,0,0,0,12)", 5, 11, 4, Some("1+1+1+3"), Some(&[9]), Some(&[4]), Some(12)),
        row("(0,0,0,0,0,0)", 6, 15, 5, Some("1+1+1+1+1+1"), Some(&[15]), Some(&[6]), Some(15)),
    ]
}

/// A documented correction to one cell of the published table.
///
/// The catalog stores the table verbatim; these four cells are misprints,
/// established by exact recomputation along two independent routes (the
/// Lefschetz rank over the rational function field and the direct
/// harmonic-form dimensions agree and contradict the printed value).
#[derive(Clone, Debug, Serialize)]
pub struct Erratum {
    pub structure: &'static str,
    pub field: &'static str,
    pub published: &'static str,
    pub corrected: &'static str,
    pub evidence: &'static str,
}

/// Known misprints in the published table.
pub fn table_errata() -> Vec<Erratum> {
    vec![
        Erratum {
            structure: "(0,0,12,13,14,15)",
            field: "h4",
            published: "[3]",
            corrected: "[2]",
            evidence: "d(a246 - a345) = a1236, so the class of a1236 vanishes and \
                       the Lefschetz image in H4 is spanned by the classes of a1256 \
                       and a2345 alone; rank 2 for every nondegenerate parameter choice",
        },
        Erratum {
            structure: "(0,0,0,12,13,14+23)",
            field: "h4",
            published: "[3]",
            corrected: "[4]",
            evidence: "rank 4 is attained at exact rational points and certified \
                       generically over the function field; the harmonic-form \
                       dimensions confirm h4 = 4 at every sampled symplectic form",
        },
        Erratum {
            structure: "(0,0,0,0,12,14+25)",
            field: "h4",
            published: "[3]",
            corrected: "[4]",
            evidence: "rank 4 is attained at exact rational points and certified \
                       generically over the function field; the harmonic-form \
                       dimensions confirm h4 = 4 at every sampled symplectic form",
        },
        Erratum {
            structure: "(0,0,0,12,13,23)",
            field: "moduli",
            published: "9",
            corrected: "11",
            evidence: "dim Z2 = b2 + rank d1 = 8 + 3 = 11 is forced by the table's \
                       own b2 column; every other row matches dim Z2 exactly",
        },
    ]
}

impl CatalogEntry {
    fn erratum(&self, field: &str) -> Option<Erratum> {
        table_errata()
            .into_iter()
            .find(|e| e.structure == self.structure && e.field == field)
    }

    /// Expected h4 set with known misprints corrected.
    pub fn expected_h4(&self) -> Option<Vec<usize>> {
        let verbatim = self.h4?.to_vec();
        match self.erratum("h4") {
            Some(e) => Some(parse_usize_set(e.corrected)),
            None => Some(verbatim),
        }
    }

    pub fn expected_h5(&self) -> Option<Vec<usize>> {
        self.h5.map(|s| s.to_vec())
    }

    pub fn expected_moduli(&self) -> Option<usize> {
        match self.erratum("moduli") {
            Some(e) => e.corrected.parse().ok(),
            None => self.moduli,
        }
    }
}

fn parse_usize_set(text: &str) -> Vec<usize> {
    text.trim_matches(['[', ']'])
        .split(',')
        .filter_map(|t| t.trim().parse().ok())
        .collect()
}

/// Structure strings of the five flexible entries.
pub fn expected_flexible() -> [&'static str; 5] {
    [
        "(0,0,12,13,23,14-25)",
        "(0,0,0,12,14,15+23+24)",
        "(0,0,0,12,13+14,24)",
        "(0,0,0,12,13,23)",
        "(0,0,0,0,12,13)",
    ]
}

/// The four-dimensional catalog: structure, b1 and the constant h3.
pub fn catalog4() -> Vec<(&'static str, usize, usize)> {
    vec![
        ("(0,0,12,13)", 2, 0),
        ("(0,0,12,0)", 3, 2), // Heisenberg ⊕ R
        ("(0,0,0,0)", 4, 4),
    ]
}

/// Find a catalog row by normalized structure string.
pub fn find_entry(normalized: &str) -> Option<CatalogEntry> {
    catalog6().into_iter().find(|e| {
        parse_spec(e.structure)
            .map(|s| s.to_string_normalized() == normalized)
            .unwrap_or(false)
    })
}

/// Parse a signed pair combination ("16+25-34") into a 2-form.
pub fn parse_cocycle(text: &str, n: usize) -> Result<KForm<Rational>> {
    let err = |msg: String| Error::Parse { pos: 0, msg };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut form = KForm::zero(n, 2);
    let mut pos = 0usize;
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        match chars[pos] {
            '+' if !first => pos += 1,
            '-' => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            c => return Err(err(format!("unexpected {c:?} in {text:?}"))),
        }
        first = false;
        let (Some(&d1), Some(&d2)) = (chars.get(pos), chars.get(pos + 1)) else {
            return Err(err(format!("expected index pair in {text:?}")));
        };
        if !d1.is_ascii_digit() || !d2.is_ascii_digit() {
            return Err(err(format!("expected index pair in {text:?}")));
        }
        let (mut i, mut j) = (d1 as usize - '0' as usize, d2 as usize - '0' as usize);
        if i == 0 || j == 0 || i == j {
            return Err(err(format!("invalid pair {d1}{d2}")));
        }
        if i > j {
            std::mem::swap(&mut i, &mut j);
            negative = !negative;
        }
        if j > n {
            return Err(err(format!("index {j} exceeds dimension {n}")));
        }
        form.add_term(
            mask_of_indices(&[i, j]),
            if negative { rat_int(-1) } else { rat_int(1) },
        );
        pos += 2;
    }
    Ok(form)
}

/// Parse one stratum constraint "VAR=POLY" where POLY is a signed sum of
/// integer-coefficient monomials in the parameter letters, e.g.
/// "C=D", "A=-2B", "E=0", "F=C^2+CD+D^2-EG".
pub fn parse_constraint(text: &str) -> Result<Constraint> {
    let err = |msg: String| Error::Parse { pos: 0, msg };
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| err(format!("expected VAR=POLY in {text:?}")))?;
    let lhs = lhs.trim();
    let var = lhs
        .chars()
        .next()
        .and_then(var_index)
        .filter(|_| lhs.len() == 1)
        .ok_or_else(|| err(format!("invalid parameter {lhs:?}")))?;

    let mut poly = MultiPoly::zero();
    let chars: Vec<char> = rhs.trim().chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0usize;
    let mut first = true;
    while pos < chars.len() {
        let mut sign = 1i64;
        match chars[pos] {
            '+' if !first => pos += 1,
            '-' => {
                sign = -1;
                pos += 1;
            }
            _ if first => {}
            c => return Err(err(format!("unexpected {c:?} in {rhs:?}"))),
        }
        first = false;
        let mut coeff = String::new();
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            coeff.push(chars[pos]);
            pos += 1;
        }
        let coeff: i64 = if coeff.is_empty() { 1 } else { coeff.parse().unwrap() };
        let mut term = MultiPoly::constant(rat_int(sign * coeff));
        let mut saw_var = false;
        while pos < chars.len() {
            let Some(v) = var_index(chars[pos]) else { break };
            pos += 1;
            saw_var = true;
            let mut exp = 1u32;
            if pos + 1 < chars.len() && chars[pos] == '^' && chars[pos + 1].is_ascii_digit() {
                exp = chars[pos + 1] as u32 - '0' as u32;
                pos += 2;
            }
            term = &term * &MultiPoly::var(v).pow(exp);
        }
        if !saw_var && coeff == 1 && sign * coeff != 0 && chars.get(pos).is_some() {
            return Err(err(format!("unexpected token in {rhs:?}")));
        }
        poly = &poly + &term;
    }
    Ok(Constraint::new(var, poly))
}

fn parse_strata(entry: &CatalogEntry) -> Result<Vec<Vec<Constraint>>> {
    entry
        .strata
        .iter()
        .map(|stratum| stratum.iter().map(|c| parse_constraint(c)).collect())
        .collect()
}

/// Run policy for the pipeline.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub sample: SampleConfig,
    /// Symplectic points per entry at which the harmonic-form computation
    /// cross-checks the rank formulas.
    pub oracle_points: usize,
    /// Run the full identity suite at every oracle point instead of the first.
    pub thorough: bool,
    /// Dyadic refinement depth for segment checks.
    pub segment_refinement: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            sample: SampleConfig::default(),
            oracle_points: 2,
            thorough: false,
            segment_refinement: 20,
        }
    }
}

impl RunConfig {
    /// Default config with the seed taken from NILFLEX_SEED when set.
    pub fn from_env() -> Self {
        let mut config = RunConfig::default();
        if let Ok(seed) = std::env::var("NILFLEX_SEED") {
            if let Ok(seed) = seed.trim().parse::<u64>() {
                config.sample.seed = seed;
            }
        }
        config
    }
}

fn render_point(point: &[Rational]) -> Vec<String> {
    point.iter().map(format_rational).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumReport {
    pub constraints: Vec<String>,
    pub h4: usize,
    pub h5: usize,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub degree: usize,
    pub low_point: Vec<String>,
    pub low_rank: usize,
    pub high_point: Vec<String>,
    pub high_rank: usize,
    pub segment_check: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub points: Vec<Vec<String>>,
    /// Oracle h4/h5 equal the Lefschetz ranks at every point.
    pub rank_formula_agrees: bool,
    /// h_k = b_k for k <= 2 at every point.
    pub low_degrees_full: bool,
    /// h*_{m-k} = h_{m+k} at every point.
    pub duality_holds: bool,
    /// Exact operator identities pass at the checked points.
    pub identities_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuralReport {
    /// b3 = 2(b2 - b1 + 1).
    pub euler_b3: bool,
    /// Nonsingular top-degree pairing in every degree.
    pub poincare_nonsingular: bool,
    /// h5 values all even.
    pub h5_even: bool,
    /// Skew-form ranks in odd degree are even at the checked points.
    pub rho_even: bool,
    /// Point ranks never exceed the generic rank.
    pub semicontinuity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub structure: String,
    pub betti: Vec<usize>,
    pub step_length: usize,
    pub six_minus_s: usize,
    pub reducible: Option<String>,
    pub symplectic: bool,
    pub pf: String,
    pub moduli_dim: Option<usize>,
    pub h4_generic: Option<usize>,
    pub h5_generic: Option<usize>,
    pub h4_values: Vec<usize>,
    pub h5_values: Vec<usize>,
    pub strata: Vec<StratumReport>,
    pub flexible: bool,
    pub certificate: Option<CertificateReport>,
    pub oracle: Option<OracleReport>,
    pub structural: StructuralReport,
    /// Deviations from the published table, with their justification.
    pub table_notes: Vec<String>,
}

/// Full pipeline for one algebra given by a structure string, with optional
/// catalog data (explicit basis + strata).
pub fn run_structure(
    structure: &str,
    family_basis: Option<&[&str]>,
    strata: &[Vec<Constraint>],
    oplus: Option<&str>,
    config: &RunConfig,
) -> Result<EntryReport> {
    let spec = parse_spec(structure)?;
    let algebra = NilpotentLieAlgebra::from_spec(&spec)?;
    let n = algebra.dim();
    let ring = CohomologyRing::compute(&algebra);
    let betti = ring.betti_numbers().to_vec();

    // structural checks that do not need a symplectic structure
    let euler_b3 = n != 6 || betti[3] == 2 * (betti[2] + 1 - betti[1]);
    let poincare_nonsingular = (0..=n).all(|k| ring.pairing_matrix(k).rank() == betti[k]);

    let family = match family_basis {
        Some(texts) => {
            let reps = texts
                .iter()
                .map(|t| parse_cocycle(t, n))
                .collect::<Result<Vec<_>>>()?;
            SymplecticFamily::with_basis(&ring, reps)?
        }
        None => SymplecticFamily::new(&ring)?,
    };

    let mut report = EntryReport {
        structure: spec.to_string_normalized(),
        betti: betti.clone(),
        step_length: algebra.step_length(),
        six_minus_s: n.saturating_sub(algebra.step_length()),
        reducible: oplus.map(str::to_string),
        symplectic: family.admits_symplectic(),
        pf: family.pf().to_string(),
        moduli_dim: None,
        h4_generic: None,
        h5_generic: None,
        h4_values: Vec::new(),
        h5_values: Vec::new(),
        strata: Vec::new(),
        flexible: false,
        certificate: None,
        oracle: None,
        table_notes: Vec::new(),
        structural: StructuralReport {
            euler_b3,
            poincare_nonsingular,
            h5_even: true,
            rho_even: true,
            semicontinuity: true,
        },
    };
    if !family.admits_symplectic() {
        return Ok(report);
    }

    let m = n / 2;
    report.moduli_dim = Some(family.moduli_dim()?);
    let l1 = family.lefschetz_matrix(1);
    let l2 = family.lefschetz_matrix(2);
    let h5_generic = family.generic_rank(&l1, &config.sample)?;
    let h4_generic = family.generic_rank(&l2, &config.sample)?;
    report.h5_generic = Some(h5_generic);
    report.h4_generic = Some(h4_generic);

    let mut h4_values: BTreeSet<usize> = BTreeSet::from([h4_generic]);
    let mut h5_values: BTreeSet<usize> = BTreeSet::from([h5_generic]);

    // strata ranks and witnesses
    let mut witnesses = Vec::new();
    for constraints in strata {
        let s4 = family.rank_on_stratum(&l2, constraints, &config.sample)?;
        let s5 = family.rank_on_stratum(&l1, constraints, &config.sample)?;
        h4_values.insert(s4.rank);
        h5_values.insert(s5.rank);
        report.strata.push(StratumReport {
            constraints: constraints.iter().map(Constraint::render).collect(),
            h4: s4.rank,
            h5: s5.rank,
            witness: render_point(&s4.witness),
        });
        witnesses.push(s4.witness);
    }

    // flexibility certificate with segment validation
    if let Some(cert) = family.flexibility_certificate(strata, &config.sample)? {
        let lm = if cert.degree == 2 * m - 2 { &l2 } else { &l1 };
        let segment_check = family.segment_rank_check(
            lm,
            &cert.low_point,
            &cert.high_point,
            config.segment_refinement,
        )?;
        report.flexible = true;
        report.certificate = Some(certificate_report(&cert, segment_check));
    }

    // oracle cross-checks at sampled points plus the stratum witnesses
    let mut points = family.sample_symplectic_points(config.oracle_points, &config.sample)?;
    points.extend(witnesses);
    let mut rank_formula_agrees = true;
    let mut low_degrees_full = true;
    let mut duality_holds = true;
    let mut identities_pass = true;
    let mut rho_even = true;
    let mut semicontinuity = true;
    let mut oracle_points = Vec::new();
    for (idx, point) in points.iter().enumerate() {
        let r4 = family.rank_at(&l2, point)?;
        let r5 = family.rank_at(&l1, point)?;
        h4_values.insert(r4);
        h5_values.insert(r5);
        semicontinuity &= r4 <= h4_generic && r5 <= h5_generic;

        let omega = family.omega_at(point)?;
        let fixed = FixedSymplecticForm::new(&algebra, &omega)?;
        let profile = fixed.harmonic_profile();
        rank_formula_agrees &= profile.h[2 * m - 2] == r4 && profile.h[2 * m - 1] == r5;
        low_degrees_full &= (0..=2).all(|k| profile.h[k] == betti[k]);
        duality_holds &= (0..=m).all(|k| profile.h_star[m - k] == profile.h[m + k]);
        if config.thorough || idx == 0 {
            identities_pass &= fixed.identity_suite().all_passed();
        }

        // skew-form ranks in odd degrees
        let omega_class = ring.class_of(&omega)?;
        for k in 0..=(m.saturating_sub(1)) / 2 {
            let (_, rho) = ring.rho_form(&omega_class, k)?;
            rho_even &= rho % 2 == 0;
        }
        oracle_points.push(render_point(point));
    }

    report.h4_values = h4_values.into_iter().collect();
    report.h5_values = h5_values.into_iter().collect();
    report.structural.h5_even = report.h5_values.iter().all(|h| h % 2 == 0);
    report.structural.rho_even = rho_even;
    report.structural.semicontinuity = semicontinuity;
    report.oracle = Some(OracleReport {
        points: oracle_points,
        rank_formula_agrees,
        low_degrees_full,
        duality_holds,
        identities_pass,
    });
    Ok(report)
}

fn certificate_report(cert: &FlexibilityCertificate, segment_check: bool) -> CertificateReport {
    CertificateReport {
        degree: cert.degree,
        low_point: render_point(&cert.low_point),
        low_rank: cert.low_rank,
        high_point: render_point(&cert.high_point),
        high_rank: cert.high_rank,
        segment_check,
    }
}

/// Run one catalog row.
pub fn run_entry(entry: &CatalogEntry, config: &RunConfig) -> Result<EntryReport> {
    let strata = parse_strata(entry)?;
    let mut report = run_structure(
        entry.structure,
        entry.family_basis.map(|b| b.to_vec()).as_deref(),
        &strata,
        entry.oplus,
        config,
    )?;
    for field in ["h4", "moduli"] {
        if let Some(e) = entry.erratum(field) {
            report.table_notes.push(format!(
                "published {} {} corrected to {}: {}",
                e.field, e.published, e.corrected, e.evidence
            ));
        }
    }
    Ok(report)
}

/// Run the whole six-dimensional catalog in table order.
pub fn run_catalog(config: &RunConfig) -> Result<Vec<EntryReport>> {
    catalog6().iter().map(|e| run_entry(e, config)).collect()
}

/// Verdict for one verified catalog row.
#[derive(Clone, Debug, Serialize)]
pub struct RowVerdict {
    pub structure: String,
    pub ok: bool,
    pub mismatches: Vec<String>,
}

/// Summary of the regression verification.
#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub rows: Vec<RowVerdict>,
    pub flexible_set_ok: bool,
    pub four_dim_ok: bool,
    pub kt_cup_ok: bool,
    pub product_row_ok: bool,
    /// Every documented erratum really deviates from print as recorded.
    pub errata_confirmed: bool,
    pub passed: bool,
}

/// Compare a computed report against the catalog expectations.
pub fn verify_entry(entry: &CatalogEntry, report: &EntryReport) -> RowVerdict {
    let mut mismatches = Vec::new();
    let mut expect = |name: &str, ok: bool| {
        if !ok {
            mismatches.push(name.to_string());
        }
    };
    expect(
        &format!("b1: expected {}, got {}", entry.b1, report.betti[1]),
        report.betti[1] == entry.b1,
    );
    expect(
        &format!("b2: expected {}, got {}", entry.b2, report.betti[2]),
        report.betti[2] == entry.b2,
    );
    expect(
        &format!(
            "6-s: expected {}, got {}",
            entry.six_minus_s, report.six_minus_s
        ),
        report.six_minus_s == entry.six_minus_s,
    );
    expect(
        &format!(
            "symplectic: expected {}, got {}",
            entry.symplectic(),
            report.symplectic
        ),
        report.symplectic == entry.symplectic(),
    );
    match (entry.expected_moduli(), report.moduli_dim) {
        (Some(e), Some(g)) => expect(&format!("moduli: expected {e}, got {g}"), e == g),
        (None, None) => {}
        (e, g) => expect(&format!("moduli: expected {e:?}, got {g:?}"), false),
    }
    if let (Some(h4), Some(h5)) = (entry.expected_h4(), entry.expected_h5()) {
        expect(
            &format!("h4 set: expected {:?}, got {:?}", h4, report.h4_values),
            report.h4_values == h4,
        );
        expect(
            &format!("h5 set: expected {:?}, got {:?}", h5, report.h5_values),
            report.h5_values == h5,
        );
        let should_flex = h4.len() > 1 || h5.len() > 1;
        expect(
            &format!(
                "flexible: expected {}, got {}",
                should_flex, report.flexible
            ),
            report.flexible == should_flex,
        );
        if let Some(cert) = &report.certificate {
            expect("certificate ranks differ", cert.low_rank < cert.high_rank);
            expect("segment check", cert.segment_check);
        } else {
            expect("certificate present", !should_flex);
        }
        if let Some(oracle) = &report.oracle {
            expect("oracle points >= 2", oracle.points.len() >= 2);
            expect("oracle rank agreement", oracle.rank_formula_agrees);
            expect("oracle low degrees full", oracle.low_degrees_full);
            expect("oracle duality", oracle.duality_holds);
            expect("oracle identities", oracle.identities_pass);
        } else {
            expect("oracle ran", false);
        }
    }
    let s = &report.structural;
    expect("b3 = 2(b2-b1+1)", s.euler_b3);
    expect("Poincare pairing nonsingular", s.poincare_nonsingular);
    expect("h5 even", s.h5_even);
    expect("rho even", s.rho_even);
    expect("rank semicontinuity", s.semicontinuity);
    RowVerdict {
        structure: report.structure.clone(),
        ok: mismatches.is_empty(),
        mismatches,
    }
}

/// The four-dimensional regression: (b1, h3) per algebra, checked with the
/// harmonic oracle at two sampled symplectic forms each.
pub fn verify_four_dim(config: &RunConfig) -> Result<bool> {
    for (structure, b1, h3) in catalog4() {
        let algebra = NilpotentLieAlgebra::parse(structure)?;
        let ring = CohomologyRing::compute(&algebra);
        if ring.betti(1) != b1 {
            return Ok(false);
        }
        let family = SymplecticFamily::new(&ring)?;
        let points = family.sample_symplectic_points(2, &config.sample)?;
        for point in &points {
            let omega = family.omega_at(point)?;
            let fixed = FixedSymplecticForm::new(&algebra, &omega)?;
            let profile = fixed.harmonic_profile();
            if profile.h[3] != h3 {
                return Ok(false);
            }
            // rank formula agrees: h3 = rank L: H¹ → H³
            let l1 = family.lefschetz_matrix(1);
            if family.rank_at(&l1, point)? != h3 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Kodaira–Thurston cup-product computation: for ω = x1x4 + x2x3 the
/// Lefschetz image in H³ has dimension 2 while the cup product
/// H¹ ⊗ H² → H³ has image of dimension 3.
pub fn verify_kt_cup() -> Result<bool> {
    let algebra = crate::algebra::kodaira_thurston();
    let ring = CohomologyRing::compute(&algebra);
    let omega = parse_cocycle("14+23", 4)?;
    let omega_class = ring.class_of(&omega)?;
    let h1 = ring.basis_classes(1);
    let lef_image: Vec<Vec<Rational>> = h1
        .iter()
        .map(|a| ring.cup(a, &omega_class).map(|c| c.coordinates))
        .collect::<Result<_>>()?;
    let lef_dim = Matrix::rank_of_span(&lef_image, ring.betti(3));
    let mut cup_image = Vec::new();
    for a in &h1 {
        for b in ring.basis_classes(2) {
            cup_image.push(ring.cup(a, &b)?.coordinates);
        }
    }
    let cup_dim = Matrix::rank_of_span(&cup_image, ring.betti(3));
    Ok(lef_dim == 2 && cup_dim == 3)
}

/// The product regression: KT₄ ⊕ R² has h5 = 4 and h4 = 9, computed
/// directly, through the product formulas, and matching the catalog row
/// (0,0,0,0,0,12).
pub fn verify_product_row(config: &RunConfig) -> Result<bool> {
    let kt = crate::algebra::kodaira_thurston();
    let omega_kt = parse_cocycle("14+23", 4)?;
    let f1 = FixedSymplecticForm::new(&kt, &omega_kt)?;
    let t2 = crate::algebra::abelian(2);
    let f2 = FixedSymplecticForm::new(&t2, &parse_cocycle("12", 2)?)?;
    let pb = crate::harmonic::product_harmonic_betti(&f1, &f2)?;
    let direct_ok = pb.direct_top_minus_1 == 4 && pb.direct_top_minus_2 == 9;
    let formula_ok = pb.formula_top_minus_1 == pb.direct_top_minus_1
        && pb.formula_top_minus_2 == pb.direct_top_minus_2;
    let star_ok = crate::harmonic::product_star_check(&f1, &f2)?.all_passed();
    // the table row for the isomorphic algebra (0,0,0,0,0,12)
    let entry = catalog6()
        .into_iter()
        .find(|e| e.structure == "(0,0,0,0,0,12)")
        .expect("row exists");
    let row_ok = entry.h4 == Some(&[9][..]) && entry.h5 == Some(&[4][..]);
    let _ = config;
    Ok(direct_ok && formula_ok && star_ok && row_ok)
}

/// Verify every catalog expectation; `passed` is the global conjunction.
pub fn verify_all(config: &RunConfig) -> Result<VerifySummary> {
    let entries = catalog6();
    let mut rows = Vec::with_capacity(entries.len());
    let mut flexible_found = Vec::new();
    for entry in &entries {
        let report = run_entry(entry, config)?;
        if report.flexible {
            flexible_found.push(
                parse_spec(entry.structure)
                    .expect("catalog entries parse")
                    .to_string_normalized(),
            );
        }
        rows.push(verify_entry(entry, &report));
    }
    let expected: BTreeSet<String> = expected_flexible()
        .iter()
        .map(|s| parse_spec(s).expect("valid").to_string_normalized())
        .collect();
    let found: BTreeSet<String> = flexible_found.into_iter().collect();
    let flexible_set_ok = expected == found;
    let four_dim_ok = verify_four_dim(config)?;
    let kt_cup_ok = verify_kt_cup()?;
    let product_row_ok = verify_product_row(config)?;
    let errata_confirmed = table_errata().iter().all(|e| {
        let corrected_differs = e.published != e.corrected;
        let entry = entries.iter().find(|c| c.structure == e.structure);
        corrected_differs && entry.is_some()
    });
    let passed = rows.iter().all(|r| r.ok)
        && flexible_set_ok
        && four_dim_ok
        && kt_cup_ok
        && product_row_ok
        && errata_confirmed;
    Ok(VerifySummary {
        rows,
        flexible_set_ok,
        four_dim_ok,
        kt_cup_ok,
        product_row_ok,
        errata_confirmed,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_34_rows_in_table_order() {
        let entries = catalog6();
        assert_eq!(entries.len(), 34);
        // lexicographic in (b1, b2, 6-s)
        let keys: Vec<(usize, usize, usize)> = entries
            .iter()
            .map(|e| (e.b1, e.b2, e.six_minus_s))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // 26 symplectic rows, 8 dashes
        assert_eq!(entries.iter().filter(|e| e.symplectic()).count(), 26);
        // every structure string parses and round-trips
        for e in &entries {
            let normalized = parse_spec(e.structure).unwrap().to_string_normalized();
            let again = parse_spec(&normalized).unwrap().to_string_normalized();
            assert_eq!(normalized, again);
        }
    }

    #[test]
    fn constraint_parser() {
        let c = parse_constraint("A=-2B").unwrap();
        assert_eq!(c.var, 0);
        assert_eq!(c.value, MultiPoly::var(1).scale(&rat_int(-2)));
        let c = parse_constraint("E=0").unwrap();
        assert!(c.value.is_zero());
        let c = parse_constraint("F=C^2+CD+D^2-EG").unwrap();
        let expected = &(&(&MultiPoly::var(2).pow(2)
            + &(&MultiPoly::var(2) * &MultiPoly::var(3)))
            + &MultiPoly::var(3).pow(2))
            - &(&MultiPoly::var(4) * &MultiPoly::var(6));
        assert_eq!(c.value, expected);
    }

    #[test]
    fn cocycle_parser() {
        let f = parse_cocycle("16+25-34", 6).unwrap();
        assert_eq!(f.coefficient(mask_of_indices(&[1, 6])), rat_int(1));
        assert_eq!(f.coefficient(mask_of_indices(&[3, 4])), rat_int(-1));
        assert!(parse_cocycle("78", 6).is_err());
    }

    #[test]
    fn flexible_rows_expected_sets_are_multivalued() {
        let flexible: BTreeSet<&str> = expected_flexible().into_iter().collect();
        for e in catalog6() {
            let multi = e.h4.is_some_and(|s| s.len() > 1)
                || e.h5.is_some_and(|s| s.len() > 1);
            assert_eq!(multi, flexible.contains(e.structure), "{}", e.structure);
            if multi {
                assert!(e.family_basis.is_some());
                assert!(!e.strata.is_empty());
            }
        }
    }

    #[test]
    fn kt_cup_dimensions() {
        assert!(verify_kt_cup().unwrap());
    }
}
