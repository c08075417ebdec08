//! JSON code descriptors: input recipes and completed build output.

use serde::{Deserialize, Serialize};

use crate::builder::{self, MinimalCodeRecipe};
use crate::code::ConvCode;
use crate::distance::{self, Attains};
use crate::error::{Error, Result};
use crate::parse;
use crate::polymat::PolyMatrix;
use crate::skew::{SkewPoly, SkewRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecipe {
    pub l: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalars: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forney: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        MatrixJson { rows: m.rows(), cols: m.cols(), entries: m.format_entries() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceJson {
    pub distance: usize,
    pub singleton: usize,
    pub griesmer: usize,
    pub attains: Attains,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildResult {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub forney: Vec<usize>,
    pub support: Vec<usize>,
    pub generator: String,
    pub matrix: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<String>,
}

/// A code given by a reduced generator literal, a single recipe (`l`, `d`,
/// `scalars`) or a list of `components` summed orthogonally. `result` is
/// written by [`build`] and ignored on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub field: String,
    pub n: usize,
    pub sigma: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentRecipe>,
    /// A unit whose components outside the support give the direct complement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub compute_distance: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<BuildResult>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub state_cap: u128,
    pub degree_cap: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { state_cap: distance::DEFAULT_STATE_CAP, degree_cap: None }
    }
}

impl CodeDescriptor {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn skew_ring(&self) -> Result<SkewRing> {
        parse::skew_ring(&self.field, self.n, &self.sigma)
    }

    fn recipes(&self, skew: &SkewRing) -> Result<Vec<MinimalCodeRecipe>> {
        let mut list = self.components.clone();
        if let Some(l) = self.l {
            list.insert(0, ComponentRecipe { l, d: self.d, scalars: self.scalars.clone() });
        } else if self.d.is_some() || self.scalars.is_some() {
            return Err(Error::Parse("recipe fields given without `l`".into()));
        }
        list.iter().map(|c| component_recipe(skew, c)).collect()
    }

    /// The reduced generator described by this descriptor.
    pub fn generator_poly(&self, skew: &SkewRing) -> Result<SkewPoly> {
        let recipes = self.recipes(skew)?;
        match (&self.generator, recipes.is_empty()) {
            (Some(g), true) => parse::skew_poly(skew, g),
            (None, false) => {
                let codes = recipes.iter().map(|r| builder::build_minimal_code(skew, r)).collect::<Result<Vec<_>>>()?;
                if let [single] = &codes[..] {
                    Ok(single.reduced_generator().expect("built from a recipe").clone())
                } else {
                    Ok(builder::orthogonal_sum(skew, &codes)?.reduced_generator().expect("built").clone())
                }
            }
            (Some(_), false) => Err(Error::Parse("give either `generator` or a recipe, not both".into())),
            (None, true) => Err(Error::Parse("descriptor has neither `generator` nor a recipe".into())),
        }
    }

    /// Expected-block mismatches of a built descriptor, as readable lines.
    pub fn mismatches(&self) -> Vec<String> {
        let (Some(e), Some(r)) = (&self.expected, &self.result) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut cmp = |name: &str, want: Option<String>, got: Option<String>| {
            if let Some(w) = want {
                let g = got.unwrap_or_else(|| "not computed".into());
                if w != g {
                    out.push(format!("{name}: expected {w}, got {g}"));
                }
            }
        };
        cmp("k", e.k.map(|v| v.to_string()), Some(r.k.to_string()));
        cmp("delta", e.delta.map(|v| v.to_string()), Some(r.delta.to_string()));
        cmp("forney", e.forney.as_ref().map(|v| format!("{v:?}")), Some(format!("{:?}", r.forney)));
        cmp("distance", e.distance.map(|v| v.to_string()), r.distance.as_ref().map(|d| d.distance.to_string()));
        out
    }
}

fn component_recipe(skew: &SkewRing, c: &ComponentRecipe) -> Result<MinimalCodeRecipe> {
    let ring = skew.ring();
    match (&c.scalars, c.d) {
        (Some(s), d) => {
            if d.is_some_and(|d| d != s.len()) {
                return Err(Error::LengthMismatch { expected: d.unwrap(), got: s.len() });
            }
            let scalars = s.iter().map(|t| parse::ring_elem(ring, t)).collect::<Result<Vec<_>>>()?;
            Ok(MinimalCodeRecipe::with_scalars(c.l, scalars))
        }
        (None, Some(d)) => Ok(MinimalCodeRecipe::new(ring, c.l, d)),
        (None, None) => Err(Error::Parse(format!("component {} needs `d` or `scalars`", c.l))),
    }
}

/// Builds the code and returns the descriptor with `result` filled in.
pub fn build(desc: &CodeDescriptor, opts: BuildOptions) -> Result<CodeDescriptor> {
    let skew = desc.skew_ring()?;
    let g = desc.generator_poly(&skew)?;
    let code = ConvCode::from_reduced(&skew, &g)?;
    let complement = match &desc.unit {
        Some(u) => {
            let u = parse::skew_poly(&skew, u)?;
            if let Some(cap) = opts.degree_cap {
                skew.unit_inverse_with_cap(&u, cap)?;
            }
            Some(skew.format(&builder::direct_complement(&skew, &g, &u)?))
        }
        None => None,
    };
    let distance = if desc.compute_distance {
        let r = distance::free_distance(code.generator(), opts.state_cap)?;
        let f = skew.field();
        Some(DistanceJson {
            distance: r.distance,
            singleton: r.singleton,
            griesmer: r.griesmer,
            attains: r.attains,
            witness: r.witness.iter().map(|p| p.format("z", f)).collect(),
        })
    } else {
        None
    };
    let mut out = desc.clone();
    out.result = Some(BuildResult {
        n: code.n(),
        k: code.k(),
        delta: code.delta(),
        forney: code.forney().to_vec(),
        support: code.support().to_vec(),
        generator: skew.format(&g),
        matrix: MatrixJson::from_matrix(code.generator()),
        distance,
        complement,
    });
    Ok(out)
}
