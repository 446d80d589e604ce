//! Centralized numerical thresholds.
//!
//! Every tolerance, guard radius, truncation order, and size cap used by the
//! library lives here under a name; no module carries its own magic numbers.
//! Tolerances are relative unless the name says otherwise.

/// Target relative accuracy of the theta-series evaluation backend.
pub const TOL_EVAL: f64 = 1e-10;

/// Residual bound for the Legendre relation eta1*omega2 - eta2*omega1 = 2*pi*i,
/// relative to |eta1*omega2| + |eta2*omega1|.
pub const TOL_LEGENDRE: f64 = 1e-10;

/// Startup self-check bound: theta backend vs. the series oracle at small |u|.
/// Loose compared to the observed agreement (~1e-13) so it only fires on a
/// genuine convention or transcription error.
pub const TOL_SELF_CHECK: f64 = 1e-8;

/// Safety radius for campaign sampling, as a fraction of the shortest lattice
/// vector. Sampled arguments and all composite arguments (sums, differences)
/// keep at least this distance from the lattice.
pub const RHO_MIN_FACTOR: f64 = 0.05;

/// Minimum pairwise separation between sampled points, as a fraction of the
/// shortest lattice vector.
pub const PAIRWISE_MIN_FACTOR: f64 = 0.05;

/// Hard evaluation guard: zeta/pe/pe' refuse arguments closer to the lattice
/// than this fraction of the shortest vector. Much smaller than
/// [`RHO_MIN_FACTOR`]: near-pole evaluation is legitimate (degeneration
/// limits probe 1e-6-scale offsets); only genuinely-on-pole input is an error.
pub const POLE_GUARD_FACTOR: f64 = 1e-8;

/// Theta series: stop when the next term falls below this multiple of one ulp
/// of the partial sum.
pub const THETA_TERM_CUTOFF_ULP: f64 = 1e-3;

/// Hard cap on theta series terms (never reached for a reduced lattice, where
/// |q| <= exp(-pi*sqrt(3)/2) gives ~12 terms).
pub const THETA_TERM_CAP: usize = 80;

/// Relative cutoff for the Eisenstein q-series (E4/E6 Lambert sums).
pub const EISENSTEIN_SERIES_CUTOFF: f64 = 1e-18;

/// Term cap for the Eisenstein q-series; exceeding it reports SlowConvergence.
pub const EISENSTEIN_TERM_CAP: usize = 2000;

/// Degeneracy test for generators: omega2/omega1 within this relative distance
/// of the real axis is rejected.
pub const LATTICE_DEGENERACY_REL: f64 = 1e-14;

/// Slack for fundamental-domain boundary comparisons during tau reduction.
pub const TAU_REDUCE_EPS: f64 = 1e-12;

/// Bound on |q| implied by a reduced tau: exp(-pi*sqrt(3)/2) plus boundary slack.
pub const NOME_BOUND: f64 = 0.06582872101129666 + 1e-12;

/// Default truncation order of the series oracle (terms through u^40).
pub const SERIES_DEFAULT_ORDER: i64 = 40;

/// Trusted evaluation radius of the series oracle, as a fraction of the
/// shortest lattice vector.
pub const SERIES_TRUST_FACTOR: f64 = 0.25;

/// Highest supported derivative order of pe (coefficient-growth guard).
pub const DERIVATIVE_ORDER_MAX: u32 = 24;

/// Largest determinant dimension.
pub const DET_DIM_MAX: usize = 16;

/// Largest n accepted by the factorial difference product.
pub const DIFF_PRODUCT_N_MAX: u32 = 16;

/// Absolute floor in the relative-residual denominator, guarding the case
/// where both sides of an identity vanish.
pub const RESIDUAL_FLOOR: f64 = 1e-300;

/// Number of Richardson extrapolation levels (steps h0/2^k, k = 0..DEPTH-1).
pub const RICHARDSON_DEPTH: usize = 5;

/// Largest confluence step for elliptic families, as a fraction of the
/// shortest lattice vector.
pub const CONFLUENCE_STEP_MAX_FACTOR: f64 = 0.01;

/// Campaign step choice: h0 = this ratio times the distance to the nearest
/// pole (capped by [`CONFLUENCE_STEP_MAX_FACTOR`]). Tying the step to the
/// pole distance keeps the truncation/noise balance of the extrapolation
/// uniform across the cell.
pub const CONFLUENCE_STEP_DISTANCE_RATIO: f64 = 0.03;

/// Campaign sampling band for the confluence identity, as fractions of the
/// shortest vector: inside this annulus around a pole the Hankel block is
/// pole-dominated and the determinant comparison stays well conditioned.
pub const CONFLUENCE_BAND: (f64, f64) = (0.15, 0.4);

/// Distance floor (fraction of the shortest vector) kept by the stencil arms
/// u + j*step and by the Hankel zero set (the multiple (n+1)u) in confluence
/// sampling.
pub const CONFLUENCE_GUARD_FACTOR: f64 = 0.1;

/// Division values: skip a sample when |psi_m(u)| falls below this, rather
/// than dividing by a near-zero division value.
pub const PSI_NEAR_ZERO: f64 = 1e-6;

/// Largest index m of a division value psi_m (derivative order 2m-3 stays
/// within the stable binary64 range).
pub const PSI_M_MAX: u32 = 7;

/// Largest multiplier in the pe(m*u) recurrence.
pub const PE_MULT_M_MAX: u32 = 6;

/// Largest Hankel dimension n in Kiepert's identity (derivatives to 2n-1).
pub const KIEPERT_N_MAX: u32 = 6;

/// Campaign caps on n for the remaining identities (determinant dimension and
/// runtime guards; the acceptance thresholds only cover n <= 5).
pub const FS_N_MAX: u32 = 8;
pub const HERMITE_N_MAX: u32 = 8;
pub const CONFLUENCE_N_MAX: u32 = 6;

/// Rejection-sampling attempts per trial before a sample is declared skipped.
pub const SAMPLER_MAX_ATTEMPTS: u32 = 10_000;

// Verification thresholds. These are the per-identity residual bounds the
// test suite and default campaigns assert; they are deliberately far above
// the observed residuals so that a failure means a broken formula, not an
// unlucky draw.

/// Frobenius-Stickelberger bordered determinant, n <= 3.
pub const TOL_FS_RESIDUAL: f64 = 1e-8;
/// Hermite determinant, n <= 3.
pub const TOL_HERMITE_RESIDUAL: f64 = 1e-8;
/// Hermite determinant at n = 4 (higher derivatives amplify rounding).
pub const TOL_HERMITE_RESIDUAL_N4: f64 = 1e-6;
/// Kiepert Hankel determinant at n = 1.
pub const TOL_KIEPERT_N1: f64 = 1e-10;
/// Kiepert at n in {2,3}.
pub const TOL_KIEPERT_N23: f64 = 1e-7;
/// Kiepert at n in {4,5}.
pub const TOL_KIEPERT_N45: f64 = 1e-5;
/// Confluence: Richardson-extrapolated quotient vs. derivative determinant.
pub const TOL_CONFLUENCE: f64 = 1e-6;
/// Confluence: exact forward-difference determinant identity (polynomials).
pub const TOL_DIFFERENCE_DET: f64 = 1e-12;
/// Degeneration anchor: (u_n + v_n)-scaled limit vs. the (n-1)-instance.
pub const TOL_DEGENERATION: f64 = 1e-4;
/// Scaled Abel-sum vanishing check of the bordered determinant.
pub const TOL_VANISHING: f64 = 1e-9;
/// Double periodicity of the bordered determinant in every argument.
pub const TOL_R_PERIODICITY: f64 = 1e-8;
/// Periodicity / quasi-periodicity of pe, zeta, sigma.
pub const TOL_PERIODICITY: f64 = 1e-9;
/// Differential equation pe'^2 = 4pe^3 - g2*pe - g3, scaled by 1 + |pe|^3.
pub const TOL_ODE: f64 = 1e-9;
/// Series oracle vs. theta backend for |u| <= SERIES_TRUST_FACTOR * shortest.
pub const TOL_BACKEND_AGREEMENT: f64 = 1e-10;
/// g3 on the square lattice and g2 on the hexagonal lattice, relative to the
/// other invariant.
pub const TOL_INVARIANT_SYMMETRY: f64 = 1e-12;
/// g2, g3 agreement across unimodular changes of basis.
pub const TOL_UNIMODULAR: f64 = 1e-10;
/// Cross-method agreement of division values (Hankel vs. sigma ratio), m <= 4.
pub const TOL_PSI_CROSS: f64 = 1e-7;
/// pe(m*u) recurrence vs. direct evaluation, m in {2,3}.
pub const TOL_PE_MULT: f64 = 1e-7;
/// Scaling covariance of the Kiepert Hankel determinant under lat -> 2*lat.
pub const TOL_SCALING: f64 = 1e-8;
