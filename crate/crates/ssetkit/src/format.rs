//! JSON documents: simplicial sets, groups, G-sets, categories, slices and Δ°-spaces.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use ssetkit_core::category::{FiniteCategory, Morphism};
use ssetkit_core::delta::DeltaSpace;
use ssetkit_core::group::FiniteGroup;
use ssetkit_core::gset::{GSet, PresentedGSet};
use ssetkit_core::localization::RelativeCategory;
use ssetkit_core::map::SimplicialMap;
use ssetkit_core::presentation::GroupPresentation;
use ssetkit_core::slice::SliceObject;
use ssetkit_core::{DegeneracyWord, Expanded, LevelMap, Levels, SimplicialSet, Simplex};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {reason}")]
    Invalid { location: String, reason: String },
    #[error(transparent)]
    Core(#[from] ssetkit_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn invalid(location: impl Into<String>, reason: impl Into<String>) -> FormatError {
    FormatError::Invalid { location: location.into(), reason: reason.into() }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.into(), source })?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ref {
    pub base: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degs: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Vertex(String),
    Simplex { id: String, faces: Vec<Ref> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SsetDoc {
    pub dims: BTreeMap<usize, Vec<Cell>>,
    /// Present when the data is only known through this dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

/// A loaded simplicial set together with its cell ids.
pub struct NamedSet {
    pub set: SimplicialSet,
    ids: HashMap<String, (usize, usize)>,
}

impl NamedSet {
    pub fn resolve(&self, r: &Ref, location: &str) -> Result<Simplex> {
        let &(dim, base) = self.ids.get(&r.base).ok_or_else(|| invalid(location, format!("unknown cell {:?}", r.base)))?;
        let word = DegeneracyWord::new(r.degs.clone()).map_err(|e| invalid(location, e.to_string()))?;
        if r.degs.first().is_some_and(|&i| i > dim + r.degs.len() - 1) {
            return Err(invalid(location, format!("degeneracy s_{} out of range", r.degs[0])));
        }
        Ok(Simplex { base_dim: dim, base, word })
    }
}

impl SsetDoc {
    pub fn load(&self) -> Result<NamedSet> {
        let top = self.dims.keys().copied().max().unwrap_or(0);
        if let Some(gap) = (0..=top).find(|n| !self.dims.contains_key(n)) {
            if self.dims.range(gap..).any(|(_, cells)| !cells.is_empty()) {
                return Err(invalid(format!("dims.{gap}"), "missing level below a nonempty one"));
            }
        }
        let mut ids = HashMap::new();
        let mut labels: Vec<Vec<String>> = Vec::new();
        for n in 0..=top {
            let mut level = Vec::new();
            for (x, cell) in self.dims.get(&n).into_iter().flatten().enumerate() {
                let id = match cell {
                    Cell::Vertex(id) if n == 0 => id,
                    Cell::Simplex { id, faces } if n == 0 && faces.is_empty() => id,
                    Cell::Simplex { id, .. } if n > 0 => id,
                    _ => return Err(invalid(format!("dims.{n}[{x}]"), "malformed cell")),
                };
                if ids.insert(id.clone(), (n, x)).is_some() {
                    return Err(invalid(format!("dims.{n}[{x}]"), format!("duplicate id {id:?}")));
                }
                level.push(id.clone());
            }
            labels.push(level);
        }
        let named = NamedSet { set: SimplicialSet::empty(), ids };
        let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
        for n in 0..=top {
            let mut level = Vec::new();
            for (x, cell) in self.dims.get(&n).into_iter().flatten().enumerate() {
                let mut fs = Vec::new();
                if let Cell::Simplex { faces, .. } = cell {
                    if n > 0 && faces.len() != n + 1 {
                        return Err(invalid(format!("dims.{n}[{x}]"), format!("{} faces, expected {}", faces.len(), n + 1)));
                    }
                    for (i, r) in faces.iter().enumerate() {
                        let loc = format!("dims.{n}[{x}].faces[{i}]");
                        let s = named.resolve(r, &loc)?;
                        if s.dim() + 1 != n {
                            return Err(invalid(loc, format!("face has dimension {}", s.dim())));
                        }
                        fs.push(s);
                    }
                }
                level.push(fs);
            }
            faces.push(level);
        }
        let set = SimplicialSet::new(faces, Some(labels), self.bound)?;
        Ok(NamedSet { set, ids: named.ids })
    }

    pub fn from_set(x: &SimplicialSet) -> SsetDoc {
        let mut dims = BTreeMap::new();
        for n in 0..=x.dim() {
            let cells = (0..x.count(n))
                .map(|b| {
                    let id = x.label(n, b);
                    if n == 0 {
                        return Cell::Vertex(id);
                    }
                    let faces = x.faces_of(n, b).iter().map(|s| ref_of(x, s)).collect();
                    Cell::Simplex { id, faces }
                })
                .collect();
            dims.insert(n, cells);
        }
        SsetDoc { dims, bound: x.bound() }
    }
}

pub fn ref_of(x: &SimplicialSet, s: &Simplex) -> Ref {
    Ref { base: x.label(s.base_dim, s.base), degs: s.word.indices().to_vec() }
}

/// A group given by a table, permutations, a standard name, or a presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDoc {
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<Vec<usize>>>,
        /// Generating permutations of `{0, …, degree-1}`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        permutations: Option<Vec<Vec<usize>>>,
        /// `"Z/n"` or `"Sn"`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Free {
        rank: usize,
    },
    /// Words are signed 1-based generator indices: `k` is generator `k-1`, `-k` its inverse.
    Fp {
        generators: Vec<String>,
        relators: Vec<Vec<i32>>,
    },
}

pub enum LoadedGroup {
    Finite(FiniteGroup),
    Presented(GroupPresentation),
}

impl LoadedGroup {
    /// The finite group, enumerating a presentation if needed.
    pub fn finite(&self, budget: u64) -> std::result::Result<FiniteGroup, ssetkit_core::Error> {
        match self {
            LoadedGroup::Finite(g) => Ok(g.clone()),
            LoadedGroup::Presented(p) => Ok(p.to_finite_group(budget)?.0),
        }
    }
}

fn named_group(name: &str) -> Option<FiniteGroup> {
    let n = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
    if name == "1" || name == "trivial" {
        Some(FiniteGroup::trivial())
    } else if let Some(k) = name.strip_prefix("Z/").and_then(n) {
        Some(FiniteGroup::cyclic(k))
    } else {
        name.strip_prefix('S').and_then(n).filter(|&k| k <= 5).map(FiniteGroup::symmetric)
    }
}

impl GroupDoc {
    pub fn load(&self) -> Result<LoadedGroup> {
        match self {
            GroupDoc::Finite { table, permutations, name, labels } => {
                let g = match (table, permutations, name) {
                    (Some(t), None, None) => FiniteGroup::from_table(t, labels.clone())?,
                    (None, Some(p), None) => {
                        let degree = p.first().map_or(0, |q| q.len());
                        FiniteGroup::from_permutations(degree, p)?
                    }
                    (None, None, Some(s)) => named_group(s).ok_or_else(|| invalid("name", format!("unknown group {s:?}")))?,
                    _ => return Err(invalid("kind finite", "give exactly one of table, permutations, name")),
                };
                Ok(LoadedGroup::Finite(g))
            }
            GroupDoc::Free { rank } => Ok(LoadedGroup::Presented(GroupPresentation::free(*rank))),
            GroupDoc::Fp { generators, relators } => {
                Ok(LoadedGroup::Presented(GroupPresentation::new(generators.clone(), relators.clone())?))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupDoc),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSetDoc {
    pub set: Vec<String>,
    pub group: GroupRef,
    /// Generator (element label, or generator name of a presentation) to permutation.
    pub action: BTreeMap<String, Vec<usize>>,
}

pub enum LoadedGSet {
    Finite(GSet),
    Presented(PresentedGSet),
}

impl GSetDoc {
    /// `dir` resolves a group given by path.
    pub fn load(&self, dir: &Path) -> Result<LoadedGSet> {
        let doc: GroupDoc = match &self.group {
            GroupRef::Inline(d) => d.clone(),
            GroupRef::Path(p) => serde_json::from_value(read_json(&dir.join(p))?)?,
        };
        match doc.load()? {
            LoadedGroup::Finite(g) => {
                let mut gens = Vec::new();
                let mut perms = Vec::new();
                for (label, perm) in &self.action {
                    let e = g
                        .elements()
                        .find(|&e| g.label(e) == label)
                        .ok_or_else(|| invalid(format!("action.{label}"), "no group element with this label"))?;
                    gens.push(e);
                    perms.push(perm.clone());
                }
                Ok(LoadedGSet::Finite(GSet::from_generators(g, self.set.clone(), &gens, &perms)?))
            }
            LoadedGroup::Presented(p) => {
                let mut perms = Vec::new();
                for name in &p.generators {
                    let perm = self.action.get(name).ok_or_else(|| invalid("action", format!("generator {name} has no permutation")))?;
                    perms.push(perm.clone());
                }
                Ok(LoadedGSet::Presented(PresentedGSet::new(p, perms)?))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorphismRef {
    Index(usize),
    Id(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    /// `[f, g, h]` with `h = f ; g` (f first). Composites with identities may be omitted.
    #[serde(default)]
    pub composition: Vec<[MorphismRef; 3]>,
    /// One per object; missing identities are added as `id_<object>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<MorphismRef>>,
    #[serde(default, rename = "W")]
    pub w: Vec<MorphismRef>,
}

impl CategoryDoc {
    pub fn load(&self) -> Result<RelativeCategory> {
        let obj = |name: &str, loc: String| {
            self.objects.iter().position(|o| o == name).ok_or_else(|| invalid(loc, format!("unknown object {name:?}")))
        };
        let mut morphisms = Vec::new();
        for (k, m) in self.morphisms.iter().enumerate() {
            morphisms.push(Morphism {
                name: m.id.clone(),
                source: obj(&m.src, format!("morphisms[{k}].src"))?,
                target: obj(&m.dst, format!("morphisms[{k}].dst"))?,
            });
        }
        let given = morphisms.len();
        let find = |r: &MorphismRef, loc: String| -> Result<usize> {
            match r {
                MorphismRef::Index(i) if *i < given => Ok(*i),
                MorphismRef::Id(s) => self.morphisms.iter().position(|m| &m.id == s).ok_or_else(|| invalid(loc, format!("unknown morphism {s:?}"))),
                MorphismRef::Index(i) => Err(invalid(loc, format!("morphism index {i} out of range"))),
            }
        };
        let identities = match &self.identities {
            Some(ids) => ids.iter().enumerate().map(|(k, r)| find(r, format!("identities[{k}]"))).collect::<Result<Vec<_>>>()?,
            None => (0..self.objects.len())
                .map(|x| {
                    morphisms.push(Morphism { name: format!("id_{}", self.objects[x]), source: x, target: x });
                    morphisms.len() - 1
                })
                .collect(),
        };
        let mut comps = Vec::new();
        for (k, [f, g, h]) in self.composition.iter().enumerate() {
            let loc = |j: usize| format!("composition[{k}][{j}]");
            comps.push((find(f, loc(0))?, find(g, loc(1))?, find(h, loc(2))?));
        }
        let c = FiniteCategory::new(self.objects.clone(), morphisms, identities, &comps)?;
        let w = self.w.iter().enumerate().map(|(k, r)| find(r, format!("W[{k}]"))).collect::<Result<Vec<_>>>()?;
        Ok(RelativeCategory::new(c, &w)?)
    }
}

/// Level tables of a set through `top`, with the expansion kept for map conversion.
pub fn expand(x: &SimplicialSet, top: usize) -> Result<Expanded> {
    Ok(Expanded::new(x, top.min(x.known_through()))?)
}

fn map_from_doc(src: &NamedSet, dst: &NamedSet, doc: &BTreeMap<String, Ref>, location: &str) -> Result<SimplicialMap> {
    let x = &src.set;
    let mut assignment = Vec::new();
    for n in 0..=x.dim() {
        let mut level = Vec::new();
        for b in 0..x.count(n) {
            let id = x.label(n, b);
            let r = doc.get(&id).ok_or_else(|| invalid(location, format!("no image for {id:?}")))?;
            level.push(dst.resolve(r, &format!("{location}.{id}"))?);
        }
        assignment.push(level);
    }
    SimplicialMap::new(x, &dst.set, assignment).map_err(|e| invalid(location, e.to_string()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceDoc {
    pub total: SsetDoc,
    pub base: SsetDoc,
    /// Image of each nondegenerate cell of the total object.
    pub map: BTreeMap<String, Ref>,
}

impl SliceDoc {
    pub fn load(&self, top: usize) -> Result<SliceObject> {
        let (y, s) = (self.total.load()?, self.base.load()?);
        let f = map_from_doc(&y, &s, &self.map, "map")?;
        let (ye, se) = (expand(&y.set, top)?, expand(&s.set, top)?);
        let top = ye.levels.top().min(se.levels.top());
        let lm = f.to_level_map(&ye, &se).truncate(top);
        Ok(SliceObject::new(ye.levels.truncate(top), se.levels.truncate(top), lm)?)
    }
}

/// A Δ°-space: one simplicial set per level `m`, and the generating maps between them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaDoc {
    pub levels: Vec<SsetDoc>,
    /// `faces[m-1][i]` is `d_i: A_m -> A_{m-1}`.
    pub faces: Vec<Vec<BTreeMap<String, Ref>>>,
    /// `degeneracies[m][i]` is `s_i: A_m -> A_{m+1}`.
    pub degeneracies: Vec<Vec<BTreeMap<String, Ref>>>,
}

impl DeltaDoc {
    pub fn load(&self, top: usize) -> Result<DeltaSpace> {
        let sets = self.levels.iter().map(|d| d.load()).collect::<Result<Vec<_>>>()?;
        let ex = sets.iter().map(|s| expand(&s.set, top)).collect::<Result<Vec<_>>>()?;
        let p = ex.iter().map(|e| e.levels.top()).min().unwrap_or(0);
        let m_bound = sets.len().saturating_sub(1);
        let level_map = |a: usize, b: usize, doc: &BTreeMap<String, Ref>, loc: String| -> Result<LevelMap> {
            let f = map_from_doc(&sets[a], &sets[b], doc, &loc)?;
            Ok(f.to_level_map(&ex[a], &ex[b]).truncate(p))
        };
        let mut faces = vec![Vec::new()];
        for m in 1..=m_bound {
            let maps = self.faces.get(m - 1).filter(|f| f.len() == m + 1).ok_or_else(|| invalid(format!("faces[{}]", m - 1), format!("expected {} maps", m + 1)))?;
            faces.push(maps.iter().enumerate().map(|(i, d)| level_map(m, m - 1, d, format!("faces[{}][{i}]", m - 1))).collect::<Result<Vec<_>>>()?);
        }
        let mut degens = Vec::new();
        for m in 0..m_bound {
            let maps = self.degeneracies.get(m).filter(|f| f.len() == m + 1).ok_or_else(|| invalid(format!("degeneracies[{m}]"), format!("expected {} maps", m + 1)))?;
            degens.push(maps.iter().enumerate().map(|(i, d)| level_map(m, m + 1, d, format!("degeneracies[{m}][{i}]"))).collect::<Result<Vec<_>>>()?);
        }
        let levels: Vec<Levels> = ex.iter().map(|e| e.levels.truncate(p)).collect();
        Ok(DeltaSpace::new(levels, faces, degens)?)
    }
}

/// Any document the CLI reads, told apart by its keys.
pub enum Document {
    Set(NamedSet),
    Group(LoadedGroup),
    GSet(LoadedGSet),
    Category(RelativeCategory),
    Slice(SliceObject),
    Delta(DeltaSpace),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Set(_) => "simplicial_set",
            Document::Group(_) => "group",
            Document::GSet(_) => "gset",
            Document::Category(_) => "category",
            Document::Slice(_) => "slice",
            Document::Delta(_) => "delta_space",
        }
    }
}

pub fn load_document(path: &Path, top: usize) -> Result<Document> {
    let v = read_json(path)?;
    let has = |k: &str| v.get(k).is_some();
    let dir = path.parent().unwrap_or(Path::new("."));
    Ok(if has("dims") {
        Document::Set(serde_json::from_value::<SsetDoc>(v)?.load()?)
    } else if has("kind") {
        Document::Group(serde_json::from_value::<GroupDoc>(v)?.load()?)
    } else if has("set") && has("action") {
        Document::GSet(serde_json::from_value::<GSetDoc>(v)?.load(dir)?)
    } else if has("objects") && has("morphisms") {
        Document::Category(serde_json::from_value::<CategoryDoc>(v)?.load()?)
    } else if has("total") && has("base") {
        Document::Slice(serde_json::from_value::<SliceDoc>(v)?.load(top)?)
    } else if has("levels") && has("faces") {
        Document::Delta(serde_json::from_value::<DeltaDoc>(v)?.load(top)?)
    } else {
        return Err(invalid(path.display().to_string(), "unrecognized document"));
    })
}
