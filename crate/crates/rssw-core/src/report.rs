//! Command-line front door: the connected-sum expression parser, the
//! orchestration of all exact modules, and the verdict report.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::index::{index_dirac, index_is_integral, index_rs, ManifoldInvariants};
use crate::scalars::Rational;
use crate::topology::{
    furuta_margin, kdegree_feasibility, slope_window, rep_counts, margin_15_4,
    virtual_dim, Feasibility, ManifoldData,
};

/// Atoms of the connected-sum grammar.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Atom {
    E8,
    MinusE8,
    H,
    K3,
    K3Bar,
    S2xS2,
}

impl Atom {
    /// Summand contribution as (E8 blocks, hyperbolic blocks).
    pub fn blocks(self) -> (i64, u64) {
        match self {
            Atom::E8 => (1, 0),
            Atom::MinusE8 => (-1, 0),
            Atom::H => (0, 1),
            Atom::K3 => (-2, 3),
            Atom::K3Bar => (2, 3),
            Atom::S2xS2 => (0, 1),
        }
    }
}

/// Parsed connected-sum expression: a list of (count, atom) terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ManifoldExpr {
    pub terms: Vec<(u64, Atom)>,
}

impl ManifoldExpr {
    /// Expands the expression into intersection-form block counts.
    pub fn expand(&self) -> ManifoldData {
        let mut e8 = 0i64;
        let mut h = 0u64;
        for (count, atom) in &self.terms {
            let (a, b) = atom.blocks();
            e8 += a * *count as i64;
            h += b * count;
        }
        ManifoldData::new(e8, h)
    }
}

/// Parses `expr := term ('#' term)*`, `term := [uint] atom`, whitespace
/// insensitive, atoms case insensitive.  Errors carry the byte offset.
pub fn parse_manifold(text: &str) -> Result<ManifoldExpr> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut terms = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Err(Error::Parse {
                offset: pos,
                message: if terms.is_empty() {
                    "empty input".into()
                } else {
                    "expected a term after '#'".into()
                },
            });
        }
        // optional count
        let mut count: u64 = 1;
        let count_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos > count_start {
            count = text[count_start..pos]
                .parse()
                .map_err(|_| Error::Parse {
                    offset: count_start,
                    message: "count out of range".into(),
                })?;
            if count == 0 {
                return Err(Error::Parse {
                    offset: count_start,
                    message: "count must be at least 1".into(),
                });
            }
            if count > 1_000_000 {
                return Err(Error::Parse {
                    offset: count_start,
                    message: "count too large".into(),
                });
            }
        }
        skip_ws(&mut pos);
        let atom_start = pos;
        let rest = text[pos..].to_ascii_uppercase();
        let atom = if rest.starts_with("-E8") {
            pos += 3;
            Atom::MinusE8
        } else if rest.starts_with("E8") {
            pos += 2;
            Atom::E8
        } else if rest.starts_with("K3BAR") {
            pos += 5;
            Atom::K3Bar
        } else if rest.starts_with("K3") {
            pos += 2;
            Atom::K3
        } else if rest.starts_with("S2XS2") {
            pos += 5;
            Atom::S2xS2
        } else if rest.starts_with('H') {
            pos += 1;
            Atom::H
        } else {
            return Err(Error::Parse {
                offset: atom_start,
                message: "unknown atom".into(),
            });
        };
        terms.push((count, atom));

        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'#' {
            return Err(Error::Parse {
                offset: pos,
                message: "expected '#' between terms".into(),
            });
        }
        pos += 1;
    }

    Ok(ManifoldExpr { terms })
}

/// Exact rational rendered as a string in JSON ("p/q", or "p" when the
/// denominator is one) so that no precision is ever lost.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Rational::from_str(&text)
            .map(Rat)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Tool and input identification attached to every report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub input: String,
}

impl Provenance {
    pub fn new(input: &str) -> Self {
        Provenance {
            tool: "rssw".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input: input.into(),
        }
    }
}

/// Full verdict report for one manifold expression.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub provenance: Provenance,
    pub e8_blocks: i64,
    pub h_blocks: u64,
    pub b2: i64,
    pub sigma: i64,
    pub b2_plus: i64,
    pub b2_minus: i64,
    pub chi: i64,
    pub index_rs: Rat,
    pub index_dirac: Rat,
    pub virtual_dim: Rat,
    pub k: i64,
    pub m: u64,
    pub feasibility: Feasibility,
    pub margin_15_4: Rat,
    pub margin_15_4_vacuous: bool,
    pub furuta_margin: Rat,
    pub window_lower_ok: bool,
    pub window_upper_ok: bool,
    pub compactness_excluded: bool,
    pub conclusion: String,
}

/// Runs the whole exact pipeline for a parsed expression.
pub fn analyze(expr: &ManifoldExpr, input_text: &str) -> Result<Report> {
    let data = expr.expand();
    let counts = rep_counts(&data, 0, 0)?;
    let (margin, vacuous) = margin_15_4(&data)?;
    let feasibility = kdegree_feasibility(&counts);
    let inv = ManifoldInvariants {
        sigma: data.sigma(),
        chi: data.chi(),
        c1sq: 0,
    };
    debug_assert!(index_is_integral(&inv));
    let (lower_ok, upper_ok) = slope_window(&data);
    let excluded = feasibility.is_excluded();

    let conclusion = if excluded && data.sigma() > 0 {
        "compactness excluded: the moduli space is non-compact for every metric, hence non-empty"
            .to_string()
    } else if vacuous {
        "bound vacuous: non-positive signature".to_string()
    } else {
        "not excluded: no obstruction from the equivariant degree".to_string()
    };

    Ok(Report {
        provenance: Provenance::new(input_text),
        e8_blocks: data.e8_count,
        h_blocks: data.h_count,
        b2: data.b2(),
        sigma: data.sigma(),
        b2_plus: data.b2_plus(),
        b2_minus: data.b2_minus(),
        chi: data.chi(),
        index_rs: Rat(index_rs(&inv)),
        index_dirac: Rat(index_dirac(&inv)),
        virtual_dim: Rat(virtual_dim(&data)),
        k: counts.k,
        m: counts.m,
        feasibility,
        margin_15_4: Rat(margin),
        margin_15_4_vacuous: vacuous,
        furuta_margin: Rat(furuta_margin(&data)),
        window_lower_ok: lower_ok,
        window_upper_ok: upper_ok,
        compactness_excluded: excluded,
        conclusion,
    })
}

impl Report {
    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let f = &self.feasibility;
        format!(
            "manifold            {input}\n\
             intersection form   {e8} E8 + {h} H\n\
             b2 / sigma / b2+    {b2} / {sigma} / {b2p}\n\
             euler char          {chi}\n\
             index (RS / Dirac)  {irs} / {idir}\n\
             virtual dim         {vd}\n\
             k / m               {k} / {m}\n\
             feasibility         {f:?}\n\
             margin (15/4 bound) {t12} (vacuous: {vac})\n\
             margin (5/4 bound)  {fur}\n\
             window [15/4, 17/2] lower {lo}, upper {hi}\n\
             conclusion          {concl}\n",
            input = self.provenance.input,
            e8 = self.e8_blocks,
            h = self.h_blocks,
            b2 = self.b2,
            sigma = self.sigma,
            b2p = self.b2_plus,
            chi = self.chi,
            irs = self.index_rs,
            idir = self.index_dirac,
            vd = self.virtual_dim,
            k = self.k,
            m = self.m,
            t12 = self.margin_15_4,
            vac = self.margin_15_4_vacuous,
            fur = self.furuta_margin,
            lo = self.window_lower_ok,
            hi = self.window_upper_ok,
            concl = self.conclusion,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;
    use crate::topology::{ExclusionReason, NotExcludedReason};

    #[test]
    fn parser_examples() {
        let e = parse_manifold("2E8 # 3H").unwrap();
        assert_eq!(e.terms, vec![(2, Atom::E8), (3, Atom::H)]);
        assert_eq!(e.expand(), ManifoldData::new(2, 3));

        let e = parse_manifold("K3bar # S2xS2").unwrap();
        assert_eq!(e.expand(), ManifoldData::new(2, 4));

        let e = parse_manifold("k3 # 2h").unwrap();
        assert_eq!(e.expand(), ManifoldData::new(-2, 5));

        let e = parse_manifold(" 3 -E8 # H ").unwrap();
        assert_eq!(e.expand(), ManifoldData::new(-3, 1));

        match parse_manifold("2Q8") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 1);
                assert_eq!(message, "unknown atom");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_manifold("").is_err());
        assert!(parse_manifold("0H").is_err());
        assert!(parse_manifold("2000000H").is_err());
        assert!(parse_manifold("2E8 #").is_err());
        assert!(parse_manifold("2E8 3H").is_err());
    }

    #[test]
    fn analyze_k3bar() {
        let expr = parse_manifold("2E8 # 3H").unwrap();
        let r = analyze(&expr, "2E8 # 3H").unwrap();
        assert_eq!(r.b2, 22);
        assert_eq!(r.sigma, 16);
        assert_eq!(r.b2_plus, 19);
        assert_eq!(r.index_rs.0, int(38));
        assert_eq!(r.k, 19);
        assert_eq!(r.m, 19);
        assert_eq!(
            r.feasibility,
            Feasibility::Excluded(ExclusionReason::TraceFraction)
        );
        assert_eq!(r.margin_15_4.0, int(-40));
        assert_eq!(r.furuta_margin.0, int(0));
        assert_eq!(r.virtual_dim.0, int(56));
        assert!(r.compactness_excluded);
    }

    #[test]
    fn analyze_split_manifold() {
        let expr = parse_manifold("2E8 # 2H").unwrap();
        let r = analyze(&expr, "2E8 # 2H").unwrap();
        assert_eq!(r.margin_15_4.0, int(-42));
        assert_eq!(r.furuta_margin.0, int(-2));
    }

    #[test]
    fn analyze_null_signature() {
        let expr = parse_manifold("3H").unwrap();
        let r = analyze(&expr, "3H").unwrap();
        assert_eq!(r.k, 0);
        assert_eq!(
            r.feasibility,
            Feasibility::NotExcluded(NotExcludedReason::KZero)
        );
        assert!(r.margin_15_4_vacuous);
        assert!(!r.compactness_excluded);
    }

    #[test]
    fn analyze_error_paths() {
        let expr = parse_manifold("2E8").unwrap();
        assert!(matches!(
            analyze(&expr, "2E8"),
            Err(Error::DefiniteForm)
        ));
        let expr = parse_manifold("1E8 # 2H").unwrap();
        assert!(matches!(
            analyze(&expr, "1E8 # 2H"),
            Err(Error::NotSpinSignature(8))
        ));
    }

    #[test]
    fn report_round_trips_through_json() {
        let expr = parse_manifold("2E8 # 3H").unwrap();
        let r = analyze(&expr, "2E8 # 3H").unwrap();
        let json = serde_json::to_string_pretty(&r).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        // rationals are strings, never floats
        assert!(json.contains("\"index_rs\": \"38\""));
        assert!(json.contains("\"margin_15_4\": \"-40\""));
    }
}
