/// Resource budgets for the combinatorial searches.
///
/// Every search that can grow with the input is bounded; exceeding a bound
/// is a clean typed error rather than an open-ended computation.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum volume of the coordinate box explored by a membership query.
    pub max_box_volume: u128,
    /// Cap on the number of Apéry elements.
    pub max_apery: usize,
    /// Cap on the number of elements produced by degree enumeration.
    pub max_enumeration: usize,
    /// Largest ambient dimension accepted by the cone computations.
    pub max_cone_dim: usize,
    /// Row budget for Fourier-Motzkin before switching to the simplex route.
    pub fm_row_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_box_volume: 100_000_000,
            max_apery: 100_000,
            max_enumeration: 1_000_000,
            max_cone_dim: 4,
            fm_row_cap: 20_000,
        }
    }
}
