//! Serializable report types with stable key order. Exact values are
//! carried as integer pairs or numerator/denominator strings next to the
//! display decimals, so output round-trips losslessly.

use bianchi_core::exact::{Rat, Surd};
use bianchi_core::qfield::{AlgInt, Disc, FieldElem};
use bianchi_core::swan::{FloorFace, GeneratorMatrix, SwanResult};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SurdJson {
    /// Terms q * sqrt(radicand) with q = num/den.
    pub terms: Vec<SurdTermJson>,
    pub decimal: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SurdTermJson {
    pub num: String,
    pub den: String,
    pub radicand: i64,
}

pub fn surd_json(s: &Surd) -> SurdJson {
    SurdJson {
        terms: s
            .terms()
            .iter()
            .map(|(q, r)| SurdTermJson {
                num: q.numer().to_string(),
                den: q.denom().to_string(),
                radicand: *r as i64,
            })
            .collect(),
        decimal: s.decimal(12),
    }
}

pub fn surd_from_json(j: &SurdJson) -> Surd {
    let mut acc = Surd::zero();
    for t in &j.terms {
        let q = Rat::new(t.num.parse().unwrap(), t.den.parse().unwrap());
        acc = acc.add(&Surd::sqrt_int(q, t.radicand as i128));
    }
    acc
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

pub fn rat_json(r: &Rat) -> RatJson {
    RatJson {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ElemJson {
    /// (a + b sqrt(d)) / 2
    pub a: i64,
    pub b: i64,
}

pub fn elem_json(x: &AlgInt) -> ElemJson {
    ElemJson {
        a: x.a().try_into().unwrap(),
        b: x.b().try_into().unwrap(),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct FieldElemJson {
    pub num: ElemJson,
    pub den: i64,
    pub pretty: String,
}

pub fn field_elem_json(z: &FieldElem, d: &Disc) -> FieldElemJson {
    FieldElemJson {
        num: elem_json(&z.num()),
        den: z.den().try_into().unwrap(),
        pretty: z.to_string_pretty(d),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BoundsJson {
    pub disc: i64,
    pub class_number: usize,
    pub delta: ElemJson,
    pub delta_norm_sq: i64,
    pub j: u64,
    pub lower: SurdJson,
    pub upper: SurdJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swan_sq: Option<i64>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FaceJson {
    pub lambda: ElemJson,
    pub mu: ElemJson,
    pub norm_mu: i64,
    pub center: FieldElemJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GeneratorJson {
    pub beta: ElemJson,
    pub alpha: ElemJson,
    pub mu: ElemJson,
    pub lambda: ElemJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SwanJson {
    pub disc: i64,
    pub swan_sq: i64,
    pub certified: bool,
    pub cap_used_sq: i64,
    pub min_vertex_height_sq: Option<RatJson>,
    pub face_count: usize,
    pub distinct_face_norms: Vec<i64>,
    pub singular_points: Vec<FieldElemJson>,
    pub faces: Vec<FaceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorJson>>,
    pub elapsed_ms: u128,
}

pub fn swan_json(
    r: &SwanResult,
    d: &Disc,
    generators: Option<&[GeneratorMatrix]>,
) -> SwanJson {
    let mut norms: Vec<i64> = r
        .faces
        .iter()
        .map(|f| f.hemi.norm_mu.try_into().unwrap())
        .collect();
    norms.sort();
    norms.dedup();
    SwanJson {
        disc: d.d(),
        swan_sq: r.swan_sq.try_into().unwrap(),
        certified: r.certified,
        cap_used_sq: r.cap_used_sq.try_into().unwrap(),
        min_vertex_height_sq: r.min_vertex_height_sq.as_ref().map(rat_json),
        face_count: r.faces.len(),
        distinct_face_norms: norms,
        singular_points: r
            .singular
            .iter()
            .map(|z| field_elem_json(z, d))
            .collect(),
        faces: r.faces.iter().map(|f| face_json(f, d)).collect(),
        generators: generators.map(|gs| {
            gs.iter()
                .map(|g| GeneratorJson {
                    beta: elem_json(&g.beta),
                    alpha: elem_json(&g.alpha),
                    mu: elem_json(&g.mu),
                    lambda: elem_json(&g.lambda),
                })
                .collect()
        }),
        elapsed_ms: r.elapsed.as_millis(),
    }
}

fn face_json(f: &FloorFace, d: &Disc) -> FaceJson {
    FaceJson {
        lambda: elem_json(&f.hemi.lambda),
        mu: elem_json(&f.hemi.mu),
        norm_mu: f.hemi.norm_mu.try_into().unwrap(),
        center: field_elem_json(&f.hemi.center_field_elem(d), d),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct JacobsthalJson {
    pub disc: i64,
    pub value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adversary_residues: Option<Vec<(u64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run_start: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run_length: Option<u64>,
}

/// One row of the survey dataset.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct Fig6Row {
    pub disc: i64,
    pub class_number: usize,
    pub delta_norm_sq: i64,
    pub j: u64,
    pub lower_val: String,
    pub upper_val: String,
    pub swan_sq: Option<i64>,
    pub log_lower: String,
    pub log_upper: String,
    pub log_swan: Option<String>,
}

pub const FIG6_HEADER: &str =
    "disc,classNumber,deltaNormSq,J,lowerVal,upperVal,swanSq,logLower,logUpper,logSwan";

impl Fig6Row {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.disc,
            self.class_number,
            self.delta_norm_sq,
            self.j,
            self.lower_val,
            self.upper_val,
            self.swan_sq.map(|s| s.to_string()).unwrap_or_default(),
            self.log_lower,
            self.log_upper,
            self.log_swan.clone().unwrap_or_default(),
        )
    }

    pub fn parse_csv_line(line: &str) -> Option<Fig6Row> {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 10 {
            return None;
        }
        Some(Fig6Row {
            disc: f[0].parse().ok()?,
            class_number: f[1].parse().ok()?,
            delta_norm_sq: f[2].parse().ok()?,
            j: f[3].parse().ok()?,
            lower_val: f[4].to_string(),
            upper_val: f[5].to_string(),
            swan_sq: if f[6].is_empty() {
                None
            } else {
                Some(f[6].parse().ok()?)
            },
            log_lower: f[7].to_string(),
            log_upper: f[8].to_string(),
            log_swan: if f[9].is_empty() {
                None
            } else {
                Some(f[9].to_string())
            },
        })
    }
}

/// 12 significant digits of an f64, plain positional notation where
/// reasonable (rendering only).
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.11e}", x);
    // s like "1.61417480947e0"
    let (mant, exp) = s.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if neg { "-" } else { "" };
    if (-4..=11).contains(&exp) {
        let point = exp + 1;
        let out = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else if (point as usize) < digits.len() {
            format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
        } else {
            format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
        };
        let out = if out.contains('.') {
            out.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            out
        };
        format!("{sign}{out}")
    } else {
        s
    }
}
