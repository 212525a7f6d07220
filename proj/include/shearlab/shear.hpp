#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "shearlab/immersion.hpp"
#include "shearlab/tolerances.hpp"

namespace shearlab {

/// Pointwise extrinsic curvature in the frames carried by a FrameData.
///
/// All tensor components live in the normal frame Xi: h[alpha](i,j) is the
/// coefficient of xi_alpha in h(e_i,e_j), and likewise for htilde. The frame
/// is generally not orthonormal for the ambient metric, so pairings against
/// normal vectors go through G_N.
struct ExtrinsicData {
    FrameData frame;

    std::vector<Eigen::MatrixXd> h;       // k matrices, n x n, symmetric
    Eigen::VectorXd H;                    // mean curvature, normal components (k)
    std::vector<Eigen::MatrixXd> htilde;  // trace-free part, k matrices n x n

    std::vector<Eigen::MatrixXd> A;     // Weingarten operator per frame leg
    std::vector<Eigen::MatrixXd> Atil;  // shear operator per frame leg

    // columns indexed by pairs (i,j) with i <= j, row index = frame leg
    Eigen::MatrixXd h_cols;       // k x n(n+1)/2
    Eigen::MatrixXd htilde_cols;  // k x n(n+1)/2

    double h_max = 0.0;        // max |h^alpha_ij|
    double htilde_max = 0.0;   // max |htilde^alpha_ij|
    double htilde_fro = 0.0;   // sqrt of the sum of squared htilde components
};

/// Shear or umbilical subspace of the normal space, columns in normal
/// components, Euclidean-orthonormal, singular-value ordered, each column's
/// first non-negligible entry made positive.
struct SubspaceBasis {
    Eigen::MatrixXd basis;  // k x dim
    int dim = 0;

    // rank-decision diagnostics: smallest retained and largest dropped
    // singular value against the threshold actually used
    double sigma_retained = 0.0;
    double sigma_dropped = 0.0;
    double threshold = 0.0;
};

struct ShearReport {
    Eigen::VectorXd u;  // parameter point
    int n = 0, k = 0, N = 0;

    int d = 0;  // dim Im htilde (shear space)
    int m = 0;  // dim of the umbilical space
    std::string label;

    Eigen::MatrixXd S;  // k x d
    Eigen::MatrixXd U;  // k x m
    int intersection_dim = 0;

    bool dims_sum_ok = true;       // m + d = k and d within the dimension bound
    int wedge_rank = 0;            // largest q with a non-vanishing q-fold wedge
    bool wedge_ok = true;          // wedge_rank == d
    int op_rank = 0;               // rank of the flattened per-leg shear operators
    bool operator_rank_ok = true;  // op_rank == d
    bool rank_margin_ok = true;    // singular values well separated from the threshold

    std::optional<bool> riemannian_direct_sum;  // set iff the ambient is Riemannian

    double max_umbilical_residual = 0.0;  // max ||Atilde_u||_F over columns of U
    double duality_residual = 0.0;        // pairing + frame-decomposition residual

    Eigen::VectorXd G;       // single shear direction (k), set when d == 1
    Eigen::MatrixXd Atilde;  // its trace-free operator (n x n), set when d == 1

    Eigen::VectorXd H;          // mean curvature, normal components
    Eigen::VectorXd H_ambient;  // same vector in ambient components

    double h_max = 0.0;
    double htilde_max = 0.0;
    double htilde_fro = 0.0;
    int first_normal_rank = 0;  // rank of the h columns, diagnostic only

    Tolerances tol;
};

/// Normal components of h(e_i,e_j): the coefficient extraction of the normal
/// part of d2Phi + ambient Christoffel correction.
std::vector<Eigen::MatrixXd> second_fundamental_form(const FrameData& fd);

/// H^alpha = (1/n) g^{ij} h^alpha_{ij}.
Eigen::VectorXd mean_curvature(const FrameData& fd, const std::vector<Eigen::MatrixXd>& h);

/// htilde^alpha_{ij} = h^alpha_{ij} - g_{ij} H^alpha.
std::vector<Eigen::MatrixXd> total_shear(const FrameData& fd,
                                         const std::vector<Eigen::MatrixXd>& h,
                                         const Eigen::VectorXd& H);

/// Bundle h, H, htilde and the per-leg operators for one point.
ExtrinsicData extrinsic_from_frame(FrameData fd);
ExtrinsicData extrinsic_at(const ImmersionSpec& spec, const Eigen::VectorXd& u,
                           const Tolerances& tol = {});

/// A_xi = g^{-1} B with B_{ij} = (G_N xi)_alpha h^alpha_{ij}; xi in normal
/// components.
Eigen::MatrixXd weingarten_operator(const ExtrinsicData& ed, const Eigen::VectorXd& xi);

/// Trace-free counterpart built from htilde; equals A_xi minus its trace part.
Eigen::MatrixXd shear_operator(const ExtrinsicData& ed, const Eigen::VectorXd& xi);

/// Basis of Im htilde from the singular vectors of the stacked htilde columns.
SubspaceBasis shear_space(const ExtrinsicData& ed, const Tolerances& tol = {});

/// Nullspace of S^T G_N; every basis vector is verified to actually have a
/// vanishing shear operator, else UmbilicalVerificationFailure is thrown.
SubspaceBasis umbilical_space(const ExtrinsicData& ed, const SubspaceBasis& S,
                              const Tolerances& tol = {});
double umbilical_residual(const ExtrinsicData& ed, const SubspaceBasis& U);

/// True iff every q-fold wedge of the given k-component covectors vanishes,
/// decided through q x q minors only (never consults an SVD). `column_floor`
/// is the magnitude below which a covector is treated as pure noise.
bool wedge_rank_oracle(const std::vector<Eigen::VectorXd>& oneforms, int q,
                       double column_floor, const Tolerances& tol = {});

/// Largest q whose wedges do not all vanish (0 when every covector is noise).
int wedge_rank(const std::vector<Eigen::VectorXd>& oneforms, double column_floor,
               const Tolerances& tol = {});

/// Flatted htilde values on the normal frame: columns of G_N * htilde_cols.
std::vector<Eigen::VectorXd> shear_oneforms(const ExtrinsicData& ed);

/// Rank of the k flattened per-leg shear operators.
int operator_rank(const ExtrinsicData& ed, const Tolerances& tol = {});

/// Rank of the h columns (first normal space), reported as a diagnostic.
int first_normal_rank(const ExtrinsicData& ed, const Tolerances& tol = {});

/// Dimension of span(A) ∩ span(B) for Euclidean-orthonormal bases, through
/// the nullspace of stacked complement projectors.
int subspace_intersection_dim(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Tolerances& tol = {});

/// Full pipeline on one frame; fills every verdict but never throws on a
/// cross-check disagreement.
ShearReport classify_frame(const FrameData& fd, const Tolerances& tol = {});
ShearReport classify_report(const ImmersionSpec& spec, const Eigen::VectorXd& u,
                            const Tolerances& tol = {});

/// Like classify_report but promotes failed cross-checks to
/// GeometryError(CrossCheckMismatch), naming the criteria that disagreed.
ShearReport classify(const ImmersionSpec& spec, const Eigen::VectorXd& u,
                     const Tolerances& tol = {});

struct ScanEntry {
    Eigen::VectorXd u;
    std::optional<ShearReport> report;
    std::string error;  // empty on success
};

struct ScanGroup {
    int d = 0, m = 0;
    std::vector<int> indices;  // entry indices with this (d, m)
};

struct ScanResult {
    std::vector<ScanEntry> entries;       // one per grid point, input order
    std::vector<ScanGroup> partition;     // grouped by (d, m), ordered by d then m
    int failures = 0;
    bool constant = false;  // single (d, m) group and no failures
};

/// Classify every grid point (concurrently when threads != 1; 0 = hardware
/// default). Per-point errors are recorded, not fatal. Results are keyed by
/// input order and independent of the evaluation schedule.
ScanResult constancy_scan(const ImmersionSpec& spec,
                          const std::vector<Eigen::VectorXd>& grid,
                          const Tolerances& tol = {}, int threads = 0);

}  // namespace shearlab
