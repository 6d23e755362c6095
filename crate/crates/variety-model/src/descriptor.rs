//! Variety descriptors: generators with their degrees and one relation
//! `sum_j t_j^{e_j} prod_i s_i^{b_ij}` (with `e_1 = 2` in the quasi-linear
//! shape and `e_j = 1` otherwise).
//!
//! Coordinates are numbered s-generators first, then t-generators; support
//! patterns are bitmasks over that numbering.

use crate::ModelError;
use exact_arith::rational::int;
use lattice_fan::{build_sigma_n, Cone, Fan, FanOrigin, PicVector};
use serde::{Deserialize, Serialize};

pub const MAX_COORDS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationShape {
    Linear,
    QuasiLinearT1Squared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub id: String,
    pub degree: PicVector,
}

/// Where the incidence of the coordinate divisors comes from.
#[derive(Clone, Debug, Serialize)]
pub enum IncidenceSource {
    /// Ray `k` of the fan corresponds to coordinate `k`.
    Fan(Fan),
    /// Relevant supports are the F-faces whose degrees have this class in
    /// the relative interior of their cone.
    Ample(PicVector),
    /// Relevant supports supplied by hand (provenance "external").
    External(Vec<u32>),
}

#[derive(Clone, Debug, Serialize)]
pub struct VarietyDescriptor {
    pub name: String,
    pub pic_basis: Vec<String>,
    pub s: Vec<Generator>,
    pub t: Vec<Generator>,
    pub shape: RelationShape,
    /// `b[i][j]`: exponent of `s_i` in the monomial of `t_j`.
    pub b: Vec<Vec<u32>>,
    pub effective_cone: Vec<PicVector>,
    pub incidence: Option<IncidenceSource>,
}

impl VarietyDescriptor {
    pub fn coord_count(&self) -> usize {
        self.s.len() + self.t.len()
    }

    pub fn pic_rank(&self) -> usize {
        self.pic_basis.len()
    }

    /// `dim X = #coordinates - 1 - rank Pic` (one relation).
    pub fn dim(&self) -> usize {
        self.coord_count() - 1 - self.pic_rank()
    }

    pub fn all_coords(&self) -> u32 {
        ((1u64 << self.coord_count()) - 1) as u32
    }

    pub fn generator(&self, k: usize) -> &Generator {
        if k < self.s.len() {
            &self.s[k]
        } else {
            &self.t[k - self.s.len()]
        }
    }

    pub fn degree(&self, k: usize) -> &PicVector {
        &self.generator(k).degree
    }

    pub fn label(&self, k: usize) -> &str {
        &self.generator(k).id
    }

    pub fn coord_of(&self, id: &str) -> Option<usize> {
        (0..self.coord_count()).find(|&k| self.label(k) == id)
    }

    pub fn t_coord(&self, j: usize) -> usize {
        self.s.len() + j
    }

    /// Exponent of `t_j` in its monomial.
    pub fn t_exponent(&self, j: usize) -> u32 {
        match (self.shape, j) {
            (RelationShape::QuasiLinearT1Squared, 0) => 2,
            _ => 1,
        }
    }

    /// The monomials as `(coordinate, exponent)` lists, one per t-generator.
    pub fn monomials(&self) -> Vec<Vec<(usize, u32)>> {
        (0..self.t.len())
            .map(|j| {
                let mut m: Vec<(usize, u32)> =
                    (0..self.s.len()).filter(|&i| self.b[i][j] > 0).map(|i| (i, self.b[i][j])).collect();
                m.push((self.t_coord(j), self.t_exponent(j)));
                m
            })
            .collect()
    }

    pub fn monomial_degree(&self, j: usize) -> PicVector {
        let mut d = self.t[j].degree.scale(self.t_exponent(j) as i64);
        for i in 0..self.s.len() {
            d = d.add(&self.s[i].degree.scale(self.b[i][j] as i64));
        }
        d
    }

    /// Degree of the relation.
    pub fn d_tot(&self) -> PicVector {
        self.monomial_degree(0)
    }

    pub fn eff_cone(&self) -> Cone {
        Cone::new(self.pic_rank(), self.effective_cone.iter().map(|v| v.0.clone()).collect())
            .expect("validated nonzero generators")
    }

    /// `-K = sum of all generator degrees - D_tot`, checked to be interior.
    pub fn anticanonical(&self) -> Result<PicVector, ModelError> {
        let mut k = PicVector::zero(self.pic_rank());
        for c in 0..self.coord_count() {
            k = k.add(self.degree(c));
        }
        let k = k.sub(&self.d_tot());
        let q: Vec<_> = k.0.iter().map(|&x| int(x)).collect();
        if !self.eff_cone().contains_interior(&q)? {
            return Err(ModelError::NotInterior(k.0));
        }
        Ok(k)
    }

    /// Eager validation used by every constructor.
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.coord_count();
        if n > MAX_COORDS {
            return Err(ModelError::TooManyCoordinates(n));
        }
        let r = self.pic_rank();
        for g in self.s.iter().chain(&self.t) {
            if g.degree.rank() != r {
                return Err(ModelError::DegreeLength { id: g.id.clone(), got: g.degree.rank(), rank: r });
            }
        }
        for (i, g) in self.effective_cone.iter().enumerate() {
            if g.rank() != r {
                return Err(ModelError::DegreeLength { id: format!("effective_cone[{i}]"), got: g.rank(), rank: r });
            }
            if g.is_zero() {
                return Err(ModelError::Fan(lattice_fan::FanError::ZeroGenerator(i)));
            }
        }
        if self.b.len() != self.s.len() || self.b.iter().any(|row| row.len() != self.t.len()) || self.t.is_empty() {
            return Err(ModelError::ExponentShape { rows: self.s.len(), cols: self.t.len() });
        }
        if self.shape == RelationShape::QuasiLinearT1Squared && self.t.len() < 2 {
            return Err(ModelError::QuasiLinearTooSmall);
        }
        let want = self.d_tot();
        for j in 1..self.t.len() {
            let got = self.monomial_degree(j);
            if got != want {
                return Err(ModelError::Inhomogeneous { j, got: got.0, want: want.0 });
            }
        }
        if let Some(IncidenceSource::Fan(f)) = &self.incidence {
            if f.rays.len() != n {
                return Err(ModelError::FanShape { rays: f.rays.len(), coords: n });
            }
        }
        self.anticanonical()?;
        Ok(())
    }
}

fn gen(id: String, degree: Vec<i64>) -> Generator {
    Generator { id, degree: PicVector(degree) }
}

/// `X_n`: `k[s_0..s_n, t_1..t_n] / sum s_i t_i`, `deg s_i = F_i`,
/// `deg t_i = F_0 + sum_{j != i} F_j`, with the fan `Sigma_n`.
pub fn builtin_xn(n: usize) -> Result<VarietyDescriptor, ModelError> {
    if n < 3 {
        return Err(ModelError::InvalidN(n));
    }
    if 2 * n + 1 > MAX_COORDS {
        return Err(ModelError::TooManyCoordinates(2 * n + 1));
    }
    let r = n + 1;
    let s = (0..=n).map(|i| gen(format!("s{i}"), PicVector::basis(r, i).0)).collect();
    let t = (1..=n)
        .map(|i| {
            let mut v = vec![1; r];
            v[i] = 0;
            gen(format!("t{i}"), v)
        })
        .collect();
    let mut b = vec![vec![0; n]; n + 1];
    for i in 1..=n {
        b[i][i - 1] = 1;
    }
    let v = VarietyDescriptor {
        name: format!("X_{n}"),
        pic_basis: (0..=n).map(|i| format!("F{i}")).collect(),
        s,
        t,
        shape: RelationShape::Linear,
        b,
        effective_cone: (0..r).map(|i| PicVector::basis(r, i)).collect(),
        incidence: Some(IncidenceSource::Fan(build_sigma_n(n)?)),
    };
    v.validate()?;
    Ok(v)
}

/// Ample class used to read off the relevant supports of the minimal
/// resolution of the A2 sextic del Pezzo surface. It lies in an open GIT
/// chamber (the test suite checks that perturbing it changes nothing).
pub const DP6A2_AMPLE: [i64; 4] = [7, 3, 6, 6];

/// The minimal desingularisation of the degree-6 del Pezzo surface with an
/// A2 singularity: `s_1 t_1^2 + s_2 t_2 + s_3 t_3`.
pub fn builtin_dp6a2() -> VarietyDescriptor {
    let s = (0..4).map(|i| gen(format!("s{i}"), PicVector::basis(4, i).0)).collect();
    let t = vec![gen("t1".into(), vec![1, 0, 1, 1]), gen("t2".into(), vec![2, 1, 1, 2]), gen("t3".into(), vec![2, 1, 2, 1])];
    let b = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let v = VarietyDescriptor {
        name: "dP6-A2".into(),
        pic_basis: (0..4).map(|i| format!("F{i}")).collect(),
        s,
        t,
        shape: RelationShape::QuasiLinearT1Squared,
        b,
        effective_cone: (0..4).map(|i| PicVector::basis(4, i)).collect(),
        incidence: Some(IncidenceSource::Ample(PicVector(DP6A2_AMPLE.to_vec()))),
    };
    v.validate().expect("built-in descriptor is valid");
    v
}

/// `x3`, `x<n>`, `X_n` or `dp6a2`.
pub fn builtin_by_name(name: &str) -> Result<VarietyDescriptor, ModelError> {
    let lower = name.trim().to_ascii_lowercase();
    if matches!(lower.as_str(), "dp6a2" | "dp6-a2") {
        return Ok(builtin_dp6a2());
    }
    let digits = lower.strip_prefix("x_").or_else(|| lower.strip_prefix('x'));
    match digits.and_then(|d| d.parse::<usize>().ok()) {
        Some(n) if n <= 11 => builtin_xn(n),
        Some(n) => Err(ModelError::TooManyCoordinates(2 * n + 1)),
        None => Err(ModelError::UnknownId(name.to_string())),
    }
}

// ---------------------------------------------------------------------------
// JSON descriptor files

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDescriptor {
    name: String,
    pic_basis: Vec<String>,
    s_generators: Vec<Generator>,
    t_generators: Vec<Generator>,
    relation: RawRelation,
    effective_cone: Vec<Vec<i64>>,
    #[serde(default)]
    incidence: Option<RawIncidence>,
    #[serde(default)]
    ample_class: Option<Vec<i64>>,
    #[serde(default)]
    fan: Option<RawFan>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    shape: RelationShape,
    b: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIncidence {
    provenance: String,
    relevant: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFan {
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

pub fn parse_descriptor(text: &str) -> Result<VarietyDescriptor, ModelError> {
    let raw: RawDescriptor = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    let r = raw.pic_basis.len();
    if r == 0 {
        return Err(ModelError::Json("empty Pic basis".into()));
    }
    let ncoords = raw.s_generators.len() + raw.t_generators.len();
    if ncoords > MAX_COORDS {
        return Err(ModelError::TooManyCoordinates(ncoords));
    }
    let mut v = VarietyDescriptor {
        name: raw.name,
        pic_basis: raw.pic_basis,
        s: raw.s_generators,
        t: raw.t_generators,
        shape: raw.relation.shape,
        b: raw.relation.b,
        effective_cone: raw.effective_cone.into_iter().map(PicVector).collect(),
        incidence: None,
    };
    for g in v.s.iter().chain(&v.t) {
        if g.degree.rank() != r {
            return Err(ModelError::DegreeLength { id: g.id.clone(), got: g.degree.rank(), rank: r });
        }
    }
    v.incidence = if let Some(f) = raw.fan {
        let dim = f.rays.first().map_or(0, |x| x.len());
        if f.rays.iter().any(|x| x.len() != dim || x.iter().all(|&c| c == 0)) || dim == 0 {
            return Err(ModelError::Json("fan rays must be nonzero and of equal length".into()));
        }
        if f.cones.iter().flatten().any(|&k| k >= f.rays.len()) {
            return Err(ModelError::Json("fan cone refers to a missing ray".into()));
        }
        let ray_labels = (0..f.rays.len()).map(|k| v.generator(k.min(ncoords.saturating_sub(1))).id.clone()).collect();
        let cones = f
            .cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Some(IncidenceSource::Fan(Fan { dim, rays: f.rays, ray_labels, cones, origin: FanOrigin::User }))
    } else if let Some(w) = raw.ample_class {
        if w.len() != r {
            return Err(ModelError::DegreeLength { id: "ample_class".into(), got: w.len(), rank: r });
        }
        Some(IncidenceSource::Ample(PicVector(w)))
    } else if let Some(inc) = raw.incidence {
        if inc.provenance != "external" {
            return Err(ModelError::Provenance(inc.provenance));
        }
        let mut masks = Vec::new();
        for set in &inc.relevant {
            let mut m = 0u32;
            for id in set {
                let k = v.coord_of(id).ok_or_else(|| ModelError::UnknownId(id.clone()))?;
                m |= 1 << k;
            }
            masks.push(m);
        }
        Some(IncidenceSource::External(masks))
    } else {
        None
    };
    v.validate()?;
    Ok(v)
}

/// Serialise a descriptor back to the file format.
pub fn descriptor_to_json(v: &VarietyDescriptor) -> serde_json::Value {
    let mut obj = serde_json::json!({
        "name": v.name,
        "pic_basis": v.pic_basis,
        "s_generators": v.s,
        "t_generators": v.t,
        "relation": {"shape": v.shape, "b": v.b},
        "effective_cone": v.effective_cone,
    });
    match &v.incidence {
        Some(IncidenceSource::Fan(f)) => obj["fan"] = serde_json::json!({"rays": f.rays, "cones": f.cones}),
        Some(IncidenceSource::Ample(w)) => obj["ample_class"] = serde_json::json!(w),
        Some(IncidenceSource::External(masks)) => {
            let relevant: Vec<Vec<&str>> = masks
                .iter()
                .map(|m| (0..v.coord_count()).filter(|k| m >> k & 1 == 1).map(|k| v.label(k)).collect())
                .collect();
            obj["incidence"] = serde_json::json!({"provenance": "external", "relevant": relevant});
        }
        None => {}
    }
    obj
}
