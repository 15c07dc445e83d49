use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize, pivot_columns, solve_fraction_free};
use crate::scalar::{Mode, Scalar};
use crate::word::Word;

/// Default cap on `n^{k+1}`, the coordinate count of a degree-`k` block.
pub const DEFAULT_COORDINATE_CAP: u64 = 1 << 20;

static COORDINATE_CAP: AtomicU64 = AtomicU64::new(DEFAULT_COORDINATE_CAP);
static CACHE: LazyLock<RwLock<HashMap<(usize, usize), Arc<LerayBasis>>>> = LazyLock::new(Default::default);

/// Sets the cap on `n^{k+1}` enforced by [`build_leray_basis`].
pub fn set_coordinate_cap(cap: u64) {
    COORDINATE_CAP.store(cap, Ordering::Relaxed);
}

pub fn coordinate_cap() -> u64 {
    COORDINATE_CAP.load(Ordering::Relaxed)
}

/// Sparse integer vector over block coordinates.
pub type SparseVec = Vec<(usize, i64)>;

/// Projection data for one group of coordinates that no generator links to
/// the rest of the block.
#[derive(Debug)]
struct Component {
    coords: Vec<usize>,
    /// Dense `coords.len()`-square projection matrix, row-major.
    exact: Vec<BigRational>,
    /// Orthonormal basis of the generator span restricted to `coords`.
    float: Vec<Vec<f64>>,
}

/// The divergence-free subspace `X_k` of degree-`k` field coordinates, with
/// the data needed to apply the orthogonal projection onto it.
///
/// Generators are `((l_j* − r_j*) ξ)_j` for every basis tensor `ξ` of
/// `(C^n)^{⊗(k+1)}`. Coordinates follow the layout of
/// [`GradedFieldCoords::block_vector`](crate::semicircular::GradedFieldCoords::block_vector).
#[derive(Debug)]
pub struct LerayBasis {
    n: usize,
    k: usize,
    generators: Vec<SparseVec>,
    components: Vec<Component>,
    rank: usize,
}

/// Coordinates of the generator attached to the basis tensor `xi`
/// (a word of length `k+1`).
///
/// Component `j` of `(l_j* − r_j*) ξ` is `[ξ_1 = j] e_{ξ_2...} − [ξ_last = j] e_{...ξ_k}`;
/// the coordinate `(j, u)` has flat index `index(j·u)`.
pub fn generator(n: usize, xi: &Word) -> SparseVec {
    let plus = xi.index(n);
    let minus = xi.rotate_right().index(n);
    if plus == minus {
        Vec::new()
    } else {
        vec![(plus, 1), (minus, -1)]
    }
}

/// Builds (or fetches from the cache) the basis of `X_k` for `n` generators.
pub fn build_leray_basis(n: usize, k: usize) -> Result<Arc<LerayBasis>> {
    if n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    let needed = (n as u128).checked_pow(k as u32 + 1).unwrap_or(u128::MAX);
    let cap = coordinate_cap() as u128;
    if needed > cap {
        return Err(Error::ResourceCap {
            what: "Leray block coordinates",
            needed,
            cap,
        });
    }
    if let Some(b) = CACHE.read().expect("leray cache poisoned").get(&(n, k)) {
        return Ok(b.clone());
    }
    let basis = Arc::new(LerayBasis::compute(n, k));
    CACHE
        .write()
        .expect("leray cache poisoned")
        .entry((n, k))
        .or_insert(basis.clone());
    Ok(basis)
}

impl LerayBasis {
    fn compute(n: usize, k: usize) -> LerayBasis {
        let dim = n.pow(k as u32 + 1);
        let generators: Vec<SparseVec> = Word::all_of_length(n, k + 1).map(|xi| generator(n, &xi)).collect();

        // Group coordinates linked by a common generator (union-find); the
        // projection is block diagonal over these groups.
        let mut parent: Vec<usize> = (0..dim).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &generators {
            if let Some(&(first, _)) = g.first() {
                for &(c, _) in &g[1..] {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, c));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
        for c in 0..dim {
            let root = find(&mut parent, c);
            groups.entry(root).or_default().0.push(c);
        }
        for (gi, g) in generators.iter().enumerate() {
            if let Some(&(c, _)) = g.first() {
                let root = find(&mut parent, c);
                groups.get_mut(&root).expect("group exists").1.push(gi);
            }
        }
        let mut grouped: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().filter(|(_, gens)| !gens.is_empty()).collect();
        grouped.sort();

        let mut components = Vec::with_capacity(grouped.len());
        let mut rank = 0;
        for (coords, gens) in grouped {
            let local: HashMap<usize, usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let m = coords.len();
            // Columns are generators, rows are local coordinates.
            let mut a = vec![vec![BigInt::zero(); gens.len()]; m];
            let mut cols_f = Vec::with_capacity(gens.len());
            for (col, &gi) in gens.iter().enumerate() {
                let mut v = vec![0.0; m];
                for &(c, val) in &generators[gi] {
                    a[local[&c]][col] = BigInt::from(val);
                    v[local[&c]] = val as f64;
                }
                cols_f.push(v);
            }
            let pivots = pivot_columns(&a);
            rank += pivots.len();
            let exact = exact_projection(&a, &pivots);
            let float = orthonormalize(&cols_f, 1e-12);
            debug_assert_eq!(float.len(), pivots.len());
            components.push(Component { coords, exact, float });
        }

        LerayBasis {
            n,
            k,
            generators,
            components,
            rank,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Length of the coordinate vectors, `n^{k+1}`.
    pub fn dim(&self) -> usize {
        self.n.pow(self.k as u32 + 1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// One (possibly zero) generator per basis tensor `ξ`, in index order.
    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    /// Dense generator vector `ξ ↦ ((l_j* − r_j*) ξ)_j`.
    pub fn generator_dense<S: Scalar>(&self, xi_index: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        for &(c, val) in &self.generators[xi_index] {
            v[c] = S::from_i64(val);
        }
        v
    }

    /// Orthogonal projection of a block vector onto `X_k`.
    ///
    /// Exact scalars use the rational projection matrices; floats use the
    /// orthonormalized generators.
    pub fn project<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.dim(), "block length mismatch");
        let mut out = vec![S::zero(); x.len()];
        for comp in &self.components {
            let m = comp.coords.len();
            if comp.coords.iter().all(|&c| x[c].is_zero()) {
                continue;
            }
            match S::MODE {
                Mode::Exact => {
                    for (r, &cr) in comp.coords.iter().enumerate() {
                        let mut acc = S::zero();
                        for (c, &cc) in comp.coords.iter().enumerate() {
                            let p = &comp.exact[r * m + c];
                            if !p.is_zero() && !x[cc].is_zero() {
                                acc.add_assign_ref(&x[cc].mul_ref(&S::from_ratio(p)));
                            }
                        }
                        out[cr] = acc;
                    }
                }
                Mode::Float => {
                    for q in &comp.float {
                        let mut d = S::zero();
                        for (i, &c) in comp.coords.iter().enumerate() {
                            d.add_assign_ref(&x[c].mul_ref(&S::from_f64(q[i])));
                        }
                        for (i, &c) in comp.coords.iter().enumerate() {
                            out[c].add_assign_ref(&d.mul_ref(&S::from_f64(q[i])));
                        }
                    }
                }
            }
        }
        out
    }

    /// The exact projection matrix as a dense `dim × dim` array (test and
    /// oracle use only; memory grows as `n^{2(k+1)}`).
    pub fn projection_matrix(&self) -> Vec<Vec<BigRational>> {
        let dim = self.dim();
        let mut p = vec![vec![BigRational::zero(); dim]; dim];
        for comp in &self.components {
            let m = comp.coords.len();
            for (r, &cr) in comp.coords.iter().enumerate() {
                for (c, &cc) in comp.coords.iter().enumerate() {
                    p[cr][cc] = comp.exact[r * m + c].clone();
                }
            }
        }
        p
    }
}

/// `B (BᵀB)^{-1} Bᵀ` for the pivot columns `B` of `a`, via the normal
/// equations solved fraction-free.
fn exact_projection(a: &[Vec<BigInt>], pivots: &[usize]) -> Vec<BigRational> {
    let m = a.len();
    if pivots.is_empty() {
        return vec![BigRational::zero(); m * m];
    }
    let b: Vec<Vec<BigInt>> = pivots.iter().map(|&c| (0..m).map(|r| a[r][c].clone()).collect()).collect();
    let r = b.len();
    let gram: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    // Right-hand sides: the columns of Bᵀ, one per coordinate.
    let rhs: Vec<Vec<BigInt>> = (0..m).map(|row| (0..r).map(|i| b[i][row].clone()).collect()).collect();
    let x = solve_fraction_free(&gram, &rhs).expect("pivot columns are independent");
    let mut p = vec![BigRational::zero(); m * m];
    for row in 0..m {
        for (col, xcol) in x.iter().enumerate() {
            let mut acc = BigRational::zero();
            for i in 0..r {
                if !b[i][row].is_zero() {
                    acc += &xcol[i] * BigRational::from_integer(b[i][row].clone());
                }
            }
            p[row * m + col] = acc;
        }
    }
    p
}
