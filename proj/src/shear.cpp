#include "shearlab/shear.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "shearlab/errors.hpp"
#include "shearlab/semiriemann.hpp"

namespace shearlab {

namespace {

int pair_count(int n) { return n * (n + 1) / 2; }

int pair_index(int n, int i, int j) {  // requires i <= j
    return i * n - i * (i - 1) / 2 + (j - i);
}

// make the first entry larger than eps positive; columns are unit vectors
void fix_column_signs(Eigen::MatrixXd& B, double eps = 1e-9) {
    for (int c = 0; c < B.cols(); ++c) {
        for (int r = 0; r < B.rows(); ++r) {
            if (std::abs(B(r, c)) > eps) {
                if (B(r, c) < 0.0) B.col(c) = -B.col(c);
                break;
            }
        }
    }
}

// iterate over all size-q index subsets of {0..count-1}
template <typename F>
bool for_each_subset(int count, int q, F&& f) {
    std::vector<int> idx(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!f(idx)) return false;
        int pos = q - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == count - q + pos) --pos;
        if (pos < 0) return true;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < q; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

double binomial(int a, int b) {
    double r = 1.0;
    for (int i = 0; i < b; ++i) r *= static_cast<double>(a - i) / static_cast<double>(i + 1);
    return r;
}

struct RankDecision {
    int rank = 0;
    double sigma_retained = 0.0;
    double sigma_dropped = 0.0;
    double threshold = 0.0;
};

RankDecision decide_rank(const Eigen::VectorXd& sv, double rel, double floor_abs) {
    RankDecision rd;
    rd.threshold = floor_abs;
    if (sv.size() > 0) rd.threshold = std::max(rel * sv(0), floor_abs);
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > rd.threshold) {
            ++rd.rank;
            rd.sigma_retained = sv(i);
        } else {
            rd.sigma_dropped = sv(i);
            break;
        }
    }
    return rd;
}

}  // namespace

std::vector<Eigen::MatrixXd> second_fundamental_form(const FrameData& fd) {
    const int n = fd.n;
    const int N = fd.N;
    const int k = fd.k;
    const auto gamma = christoffel(fd.ambient);

    // ambient second derivative of the immersion plus the connection term
    std::vector<Eigen::MatrixXd> h(static_cast<std::size_t>(k), Eigen::MatrixXd::Zero(n, n));
    Eigen::VectorXd w(N);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (int a = 0; a < N; ++a) {
                double v = fd.d2phi[static_cast<std::size_t>(a)](i, j);
                v += fd.E.col(i).transpose() * gamma[static_cast<std::size_t>(a)] * fd.E.col(j);
                w[a] = v;
            }
            // normal coefficients: G_N^{-1} Xi^T gbar w kills the tangent part
            Eigen::VectorXd c = fd.G_N_inv * (fd.Xi.transpose() * (fd.ambient.g_lower * w));
            for (int alpha = 0; alpha < k; ++alpha) {
                h[static_cast<std::size_t>(alpha)](i, j) = c[alpha];
                h[static_cast<std::size_t>(alpha)](j, i) = c[alpha];
            }
        }
    }
    return h;
}

Eigen::VectorXd mean_curvature(const FrameData& fd, const std::vector<Eigen::MatrixXd>& h) {
    Eigen::VectorXd H(fd.k);
    for (int alpha = 0; alpha < fd.k; ++alpha)
        H[alpha] = (fd.g_inv * h[static_cast<std::size_t>(alpha)]).trace() / fd.n;
    return H;
}

std::vector<Eigen::MatrixXd> total_shear(const FrameData& fd,
                                         const std::vector<Eigen::MatrixXd>& h,
                                         const Eigen::VectorXd& H) {
    std::vector<Eigen::MatrixXd> ht;
    ht.reserve(h.size());
    for (int alpha = 0; alpha < fd.k; ++alpha)
        ht.push_back(h[static_cast<std::size_t>(alpha)] - H[alpha] * fd.g);
    return ht;
}

ExtrinsicData extrinsic_from_frame(FrameData fd) {
    ExtrinsicData ed;
    ed.frame = std::move(fd);
    const FrameData& f = ed.frame;
    const int n = f.n, k = f.k;
    const int P = pair_count(n);

    ed.h = second_fundamental_form(f);
    ed.H = mean_curvature(f, ed.h);
    ed.htilde = total_shear(f, ed.h, ed.H);

    ed.h_cols = Eigen::MatrixXd(k, P);
    ed.htilde_cols = Eigen::MatrixXd(k, P);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int col = pair_index(n, i, j);
            for (int alpha = 0; alpha < k; ++alpha) {
                ed.h_cols(alpha, col) = ed.h[static_cast<std::size_t>(alpha)](i, j);
                ed.htilde_cols(alpha, col) = ed.htilde[static_cast<std::size_t>(alpha)](i, j);
            }
        }

    for (int alpha = 0; alpha < k; ++alpha) {
        ed.h_max = std::max(ed.h_max, ed.h[static_cast<std::size_t>(alpha)].cwiseAbs().maxCoeff());
        ed.htilde_max = std::max(
            ed.htilde_max, ed.htilde[static_cast<std::size_t>(alpha)].cwiseAbs().maxCoeff());
        ed.htilde_fro += ed.htilde[static_cast<std::size_t>(alpha)].squaredNorm();
    }
    ed.htilde_fro = std::sqrt(ed.htilde_fro);

    ed.A.reserve(static_cast<std::size_t>(k));
    ed.Atil.reserve(static_cast<std::size_t>(k));
    for (int alpha = 0; alpha < k; ++alpha) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
        e[alpha] = 1.0;
        ed.A.push_back(weingarten_operator(ed, e));
        ed.Atil.push_back(shear_operator(ed, e));
    }
    return ed;
}

ExtrinsicData extrinsic_at(const ImmersionSpec& spec, const Eigen::VectorXd& u,
                           const Tolerances& tol) {
    return extrinsic_from_frame(frame_at(spec, u, tol));
}

Eigen::MatrixXd weingarten_operator(const ExtrinsicData& ed, const Eigen::VectorXd& xi) {
    const FrameData& f = ed.frame;
    if (xi.size() != f.k) throw Error("normal vector must have k components");
    Eigen::VectorXd flat = f.G_N * xi;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(f.n, f.n);
    for (int alpha = 0; alpha < f.k; ++alpha)
        B += flat[alpha] * ed.h[static_cast<std::size_t>(alpha)];
    return f.g_inv * B;
}

Eigen::MatrixXd shear_operator(const ExtrinsicData& ed, const Eigen::VectorXd& xi) {
    const FrameData& f = ed.frame;
    if (xi.size() != f.k) throw Error("normal vector must have k components");
    Eigen::VectorXd flat = f.G_N * xi;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(f.n, f.n);
    for (int alpha = 0; alpha < f.k; ++alpha)
        B += flat[alpha] * ed.htilde[static_cast<std::size_t>(alpha)];
    return f.g_inv * B;
}

SubspaceBasis shear_space(const ExtrinsicData& ed, const Tolerances& tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ed.htilde_cols, Eigen::ComputeFullU);
    RankDecision rd = decide_rank(svd.singularValues(), tol.rank_rel, tol.trace_free(ed.h_max));

    SubspaceBasis out;
    out.dim = rd.rank;
    out.sigma_retained = rd.sigma_retained;
    out.sigma_dropped = rd.sigma_dropped;
    out.threshold = rd.threshold;
    out.basis = svd.matrixU().leftCols(rd.rank);
    fix_column_signs(out.basis);
    return out;
}

SubspaceBasis umbilical_space(const ExtrinsicData& ed, const SubspaceBasis& S,
                              const Tolerances& tol) {
    const FrameData& f = ed.frame;
    SubspaceBasis out;
    if (S.dim == 0) {
        out.dim = f.k;
        out.basis = Eigen::MatrixXd::Identity(f.k, f.k);
    } else {
        Eigen::MatrixXd M = S.basis.transpose() * f.G_N;  // d x k
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
        RankDecision rd = decide_rank(svd.singularValues(), tol.rank_rel, 0.0);
        out.dim = f.k - rd.rank;
        out.sigma_retained = rd.sigma_retained;
        out.sigma_dropped = rd.sigma_dropped;
        out.threshold = rd.threshold;
        out.basis = svd.matrixV().rightCols(out.dim);
        fix_column_signs(out.basis);
    }

    double residual = umbilical_residual(ed, out);
    if (residual > tol.umbilical(ed.htilde_fro))
        throw GeometryError(GeometryError::Kind::UmbilicalVerificationFailure,
                            "umbilical candidate has shear-operator norm " +
                                std::to_string(residual) + " above the verification bound " +
                                std::to_string(tol.umbilical(ed.htilde_fro)));
    return out;
}

double umbilical_residual(const ExtrinsicData& ed, const SubspaceBasis& U) {
    double worst = 0.0;
    for (int c = 0; c < U.dim; ++c)
        worst = std::max(worst, shear_operator(ed, U.basis.col(c)).norm());
    return worst;
}

std::vector<Eigen::VectorXd> shear_oneforms(const ExtrinsicData& ed) {
    Eigen::MatrixXd W = ed.frame.G_N * ed.htilde_cols;
    std::vector<Eigen::VectorXd> forms;
    forms.reserve(static_cast<std::size_t>(W.cols()));
    for (int c = 0; c < W.cols(); ++c) forms.push_back(W.col(c));
    return forms;
}

bool wedge_rank_oracle(const std::vector<Eigen::VectorXd>& oneforms, int q,
                       double column_floor, const Tolerances& tol) {
    const int P = static_cast<int>(oneforms.size());
    if (q <= 0) return false;  // the empty wedge never vanishes
    if (P == 0) return true;
    const int k = static_cast<int>(oneforms.front().size());
    if (q > std::min(P, k)) return true;

    if (binomial(P, q) * binomial(k, q) > 2e6)
        throw Error("wedge oracle would enumerate too many minors");

    bool all_vanish = for_each_subset(P, q, [&](const std::vector<int>& cols) {
        double bound = tol.rank_rel;
        Eigen::MatrixXd sub(k, q);
        for (int c = 0; c < q; ++c) {
            sub.col(c) = oneforms[static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])];
            bound *= std::max(sub.col(c).norm(), column_floor);
        }
        // a q-fold wedge vanishes iff every q x q row minor does
        return for_each_subset(k, q, [&](const std::vector<int>& rows) {
            Eigen::MatrixXd minor(q, q);
            for (int r = 0; r < q; ++r) minor.row(r) = sub.row(rows[static_cast<std::size_t>(r)]);
            return std::abs(minor.determinant()) <= bound;
        });
    });
    return all_vanish;
}

int wedge_rank(const std::vector<Eigen::VectorXd>& oneforms, double column_floor,
               const Tolerances& tol) {
    if (oneforms.empty()) return 0;
    const int k = static_cast<int>(oneforms.front().size());
    int top = std::min(static_cast<int>(oneforms.size()), k);
    for (int q = top; q >= 1; --q)
        if (!wedge_rank_oracle(oneforms, q, column_floor, tol)) return q;
    return 0;
}

int operator_rank(const ExtrinsicData& ed, const Tolerances& tol) {
    const FrameData& f = ed.frame;
    Eigen::MatrixXd flat(f.n * f.n, f.k);
    for (int alpha = 0; alpha < f.k; ++alpha)
        flat.col(alpha) =
            Eigen::Map<const Eigen::VectorXd>(ed.Atil[static_cast<std::size_t>(alpha)].data(),
                                              f.n * f.n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat);
    double floor_abs =
        tol.trace_free(ed.h_max) * f.g_inv.operatorNorm() * f.G_N.operatorNorm();
    return decide_rank(svd.singularValues(), tol.rank_rel, floor_abs).rank;
}

int first_normal_rank(const ExtrinsicData& ed, const Tolerances& tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ed.h_cols);
    return decide_rank(svd.singularValues(), tol.rank_rel, tol.trace_free(ed.h_max)).rank;
}

int subspace_intersection_dim(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Tolerances& tol) {
    if (A.rows() != B.rows()) throw Error("subspace bases live in different spaces");
    const int k = static_cast<int>(A.rows());
    if (A.cols() == 0 || B.cols() == 0) return 0;
    Eigen::MatrixXd stacked(2 * k, k);
    stacked.topRows(k) = Eigen::MatrixXd::Identity(k, k) - A * A.transpose();
    stacked.bottomRows(k) = Eigen::MatrixXd::Identity(k, k) - B * B.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    int nullity = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) <= tol.intersection()) ++nullity;
    return nullity;
}

namespace {

double duality_residual(const ExtrinsicData& ed) {
    const FrameData& f = ed.frame;
    const int n = f.n, k = f.k;
    std::mt19937_64 rng(0x5eedbeefULL);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // ambient representatives of the htilde values
    std::vector<Eigen::VectorXd> amb;
    for (int c = 0; c < ed.htilde_cols.cols(); ++c)
        amb.push_back(f.Xi * ed.htilde_cols.col(c));

    // dual-frame operators: Atil^i = sum_j (G_N^{-1})_{ij} Atil_j
    std::vector<Eigen::MatrixXd> dual(static_cast<std::size_t>(k),
                                      Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            dual[static_cast<std::size_t>(i)] +=
                f.G_N_inv(i, j) * ed.Atil[static_cast<std::size_t>(j)];

    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd xi(k);
        for (int a = 0; a < k; ++a) xi[a] = gauss(rng);

        // pairing identity: g(Atil_xi e_i, e_j) vs gbar(htilde(e_i,e_j), xi)
        Eigen::MatrixXd direct = shear_operator(ed, xi);
        Eigen::MatrixXd lhs = f.g * direct;
        Eigen::VectorXd xi_amb = f.Xi * xi;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double rhs =
                    amb[static_cast<std::size_t>(pair_index(n, i, j))].transpose() *
                    f.ambient.g_lower * xi_amb;
                worst = std::max(worst, std::abs(lhs(i, j) - rhs));
            }

        // frame decomposition: Atil_xi = sum_i gbar(xi_i, xi) Atil^i
        Eigen::VectorXd coeff = f.G_N * xi;
        Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < k; ++i) recon += coeff[i] * dual[static_cast<std::size_t>(i)];
        worst = std::max(worst, (recon - direct).cwiseAbs().maxCoeff());
    }
    return worst;
}

std::string make_label(int d, int m, int k) {
    if (m == k) return "totally-umbilical";
    if (m == 0) return "no-umbilical-directions";
    if (d == 1) return "single-shear-direction";
    return "intermediate(" + std::to_string(m) + ")";
}

}  // namespace

ShearReport classify_frame(const FrameData& fd, const Tolerances& tol) {
    ExtrinsicData ed = extrinsic_from_frame(fd);
    const FrameData& f = ed.frame;
    const int n = f.n, k = f.k;
    const int P = pair_count(n);

    ShearReport rep;
    rep.u = f.u;
    rep.n = n;
    rep.k = k;
    rep.N = f.N;
    rep.tol = tol;

    SubspaceBasis S = shear_space(ed, tol);
    SubspaceBasis U = umbilical_space(ed, S, tol);
    rep.d = S.dim;
    rep.m = U.dim;
    rep.S = S.basis;
    rep.U = U.basis;
    rep.max_umbilical_residual = umbilical_residual(ed, U);

    const int d_bound = std::min(k, P - 1);
    rep.dims_sum_ok = (rep.m + rep.d == k) && rep.d >= 0 && rep.d <= d_bound && rep.m <= k;

    double col_floor = (1.0 + ed.h_max) * f.G_N.operatorNorm();
    rep.wedge_rank = wedge_rank(shear_oneforms(ed), col_floor, tol);
    rep.wedge_ok = (rep.wedge_rank == rep.d);

    rep.op_rank = operator_rank(ed, tol);
    rep.operator_rank_ok = (rep.op_rank == rep.d);

    rep.rank_margin_ok =
        (rep.d == 0 || S.sigma_retained > 10.0 * S.threshold) &&
        (S.sigma_dropped == 0.0 || S.sigma_dropped < S.threshold / 10.0);

    rep.intersection_dim = subspace_intersection_dim(rep.S, rep.U, tol);
    if (f.ambient_n_minus == 0) rep.riemannian_direct_sum = (rep.intersection_dim == 0);

    rep.label = make_label(rep.d, rep.m, k);

    if (rep.d == 1) {
        rep.G = rep.S.col(0);
        Eigen::MatrixXd Bt(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                Bt(i, j) = rep.G.dot(ed.htilde_cols.col(pair_index(n, std::min(i, j),
                                                                   std::max(i, j))));
        rep.Atilde = f.g_inv * Bt;
    }

    rep.duality_residual = duality_residual(ed);

    rep.H = ed.H;
    rep.H_ambient = f.Xi * ed.H;
    rep.h_max = ed.h_max;
    rep.htilde_max = ed.htilde_max;
    rep.htilde_fro = ed.htilde_fro;
    rep.first_normal_rank = first_normal_rank(ed, tol);
    return rep;
}

ShearReport classify_report(const ImmersionSpec& spec, const Eigen::VectorXd& u,
                            const Tolerances& tol) {
    return classify_frame(frame_at(spec, u, tol), tol);
}

ShearReport classify(const ImmersionSpec& spec, const Eigen::VectorXd& u,
                     const Tolerances& tol) {
    ShearReport rep = classify_report(spec, u, tol);
    if (rep.dims_sum_ok && rep.wedge_ok && rep.operator_rank_ok) return rep;

    std::ostringstream msg;
    msg << "cross-checks disagree at point (";
    for (int i = 0; i < rep.u.size(); ++i) msg << (i ? ", " : "") << rep.u[i];
    msg << "): d=" << rep.d << ", m=" << rep.m;
    if (!rep.dims_sum_ok) msg << "; dimension identity m + d = k violated";
    if (!rep.wedge_ok) msg << "; wedge oracle rank " << rep.wedge_rank;
    if (!rep.operator_rank_ok) msg << "; operator rank " << rep.op_rank;
    throw GeometryError(GeometryError::Kind::CrossCheckMismatch, msg.str());
}

ScanResult constancy_scan(const ImmersionSpec& spec, const std::vector<Eigen::VectorXd>& grid,
                          const Tolerances& tol, int threads) {
    ScanResult result;
    result.entries.resize(grid.size());
    const int count = static_cast<int>(grid.size());

    auto classify_one = [&](int i) {
        ScanEntry& entry = result.entries[static_cast<std::size_t>(i)];
        entry.u = grid[static_cast<std::size_t>(i)];
        try {
            entry.report = classify_report(spec, entry.u, tol);
        } catch (const std::exception& err) {
            entry.error = err.what();
        }
    };

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, std::max(count, 1));
    if (threads == 1 || count < 2) {
        for (int i = 0; i < count; ++i) classify_one(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++) classify_one(i);
            });
        for (auto& th : pool) th.join();
    }

    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int i = 0; i < count; ++i) {
        const ScanEntry& entry = result.entries[static_cast<std::size_t>(i)];
        if (entry.report)
            groups[{entry.report->d, entry.report->m}].push_back(i);
        else
            ++result.failures;
    }
    for (auto& [dm, idx] : groups)
        result.partition.push_back({dm.first, dm.second, std::move(idx)});
    result.constant = (result.partition.size() == 1 && result.failures == 0);
    return result;
}

}  // namespace shearlab
