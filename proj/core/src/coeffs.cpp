#include "oscbath/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "oscbath/csvio.hpp"
#include "oscbath/errors.hpp"

namespace oscbath {

namespace {

// Running tau-integrals of the trig products, as functions of the shifted
// frequency x and time t:
//   S(x,t) = Int_0^t cos(x tau) dtau = sin(xt)/x
//   V(x,t) = Int_0^t sin(x tau) dtau = (1 - cos(xt))/x
// Both are evaluated through half-angle products (no cancellation):
//   S = 2 sin(xt/2) cos(xt/2) / x,  V = 2 sin^2(xt/2) / x.
struct SincPair {
    double S;
    double V;
};

inline SincPair sinc_pair(double x, double t) {
    if (x == 0.0) return {t, 0.0};
    const double half = 0.5 * x * t;
    const double sh = std::sin(half);
    const double ch = std::cos(half);
    return {2.0 * sh * ch / x, 2.0 * sh * sh / x};
}

struct RawCoeffs {
    double d_fv = 0.0, g_fv = 0.0, pi_fv = 0.0, r_fv = 0.0;
    double d_rwa = 0.0, g_rwa = 0.0, r_rwa = 0.0;
};

// Shared frequency nodes + analytic drude tail; eval() returns all seven
// coefficients at one time, per unit alpha^2.
class CoeffEngine {
public:
    CoeffEngine(const BathSpec& spec, double omega0, double t_max,
                const QuadratureSettings& settings)
        : env_(build_envelopes(spec, omega0, t_max, settings)), omega0_(omega0) {
        if (env_.has_drude_tail) {
            tail_.emplace(env_.band_top, spec.spectral.omega_c, omega0,
                          settings.tail_rel_tol);
        }
    }

    RawCoeffs eval(double t) const {
        RawCoeffs out;
        if (t == 0.0) return out;
        long double d_fv = 0, g_fv = 0, pi_fv = 0, r_fv = 0;
        long double d_rwa = 0, g_rwa = 0, r_rwa = 0;
        const std::size_t n = env_.omega.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double w = env_.omega[i];
            const double ek = env_.e_kappa[i] * env_.weight[i];
            const double eg = env_.e_gamma[i] * env_.weight[i];
            const auto [Sm, Vm] = sinc_pair(w - omega0_, t);
            const auto [Sp, Vp] = sinc_pair(w + omega0_, t);
            d_fv += ek * (Sm + Sp);
            g_fv += eg * (Sm - Sp);
            pi_fv += ek * (Vp - Vm);
            r_fv += 2.0 * eg * (Vp + Vm);
            d_rwa += ek * Sm;
            g_rwa += eg * Sm;
            r_rwa += 2.0 * eg * Vm;
        }
        out.d_fv = static_cast<double>(d_fv);
        out.g_fv = static_cast<double>(g_fv);
        out.pi_fv = static_cast<double>(pi_fv);
        out.r_fv = static_cast<double>(r_fv);
        out.d_rwa = static_cast<double>(d_rwa);
        out.g_rwa = static_cast<double>(g_rwa);
        out.r_rwa = static_cast<double>(r_rwa);

        if (tail_) {
            // osc(s,t) = Int_W^inf h e^{i(w-s)t}/(w-s) dw = C(s) + i S(s);
            // the V-type tail is stat(s) - C(s).
            const auto op = tail_->osc(omega0_, t);
            const auto om = tail_->osc(-omega0_, t);
            const double vt_p = tail_->stat(omega0_) - op.real();
            const double vt_m = tail_->stat(-omega0_) - om.real();
            out.d_fv += op.imag() + om.imag();
            out.g_fv += op.imag() - om.imag();
            out.pi_fv += vt_m - vt_p;
            out.r_fv += 2.0 * (vt_m + vt_p);
            out.d_rwa += op.imag();
            out.g_rwa += op.imag();
            out.r_rwa += 2.0 * vt_p;
        }
        return out;
    }

private:
    BathEnvelopes env_;
    std::optional<DrudeTail> tail_;
    double omega0_;
};

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw ConfigError("grid: must be nonempty");
    if (grid.front() != 0.0) throw ConfigError("grid: must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ConfigError("grid: must be strictly increasing");
        }
    }
}

}  // namespace

CoefficientTable::CoefficientTable(std::vector<double> grid,
                                   std::array<std::vector<double>, 7> columns,
                                   BathSpec spec, double omega0,
                                   QuadratureSettings settings)
    : grid_(std::move(grid)),
      col_(std::move(columns)),
      spec_(spec),
      omega0_(omega0),
      settings_(settings) {
    for (const auto& c : col_) {
        if (c.size() != grid_.size()) {
            throw std::invalid_argument("CoefficientTable: column length mismatch");
        }
        for (double v : c) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("CoefficientTable: non-finite value");
            }
        }
    }
    if (grid_.size() >= 2) {
        for (std::size_t k = 0; k < col_.size(); ++k) {
            interp_[k] = MonotoneCubic(grid_, col_[k]);
        }
    }
}

FvCoefficients CoefficientTable::fv_at(double t) const {
    if (grid_.size() == 1) {
        if (t != grid_[0]) throw RangeError("CoefficientTable: query outside range");
        return {};
    }
    return {interp_[0](t), interp_[1](t), interp_[2](t), interp_[3](t)};
}

RwaCoefficients CoefficientTable::rwa_at(double t) const {
    if (grid_.size() == 1) {
        if (t != grid_[0]) throw RangeError("CoefficientTable: query outside range");
        return {};
    }
    return {interp_[4](t), interp_[5](t), interp_[6](t)};
}

FvCoefficients fv_coefficients(const BathSpec& spec, double omega0, double t,
                               const QuadratureSettings& settings) {
    if (t < 0.0) throw std::domain_error("fv_coefficients: t must be >= 0");
    if (t == 0.0 || spec.alpha == 0.0) {
        spec.validate();
        return {};
    }
    const CoeffEngine engine(spec, omega0, t, settings);
    const RawCoeffs raw = engine.eval(t);
    const double a2 = spec.alpha * spec.alpha;
    return {a2 * raw.d_fv, a2 * raw.g_fv, a2 * raw.pi_fv, a2 * raw.r_fv};
}

RwaCoefficients rwa_coefficients(const BathSpec& spec, double omega0, double t,
                                 const QuadratureSettings& settings) {
    if (t < 0.0) throw std::domain_error("rwa_coefficients: t must be >= 0");
    if (t == 0.0 || spec.alpha == 0.0) {
        spec.validate();
        return {};
    }
    const CoeffEngine engine(spec, omega0, t, settings);
    const RawCoeffs raw = engine.eval(t);
    const double a2 = spec.alpha * spec.alpha;
    return {a2 * raw.d_rwa, a2 * raw.g_rwa, a2 * raw.r_rwa};
}

CoefficientTable tabulate(const BathSpec& spec, double omega0,
                          const std::vector<double>& grid,
                          const QuadratureSettings& settings, unsigned jobs) {
    spec.validate();
    validate_grid(grid);

    const std::size_t n = grid.size();
    std::array<std::vector<double>, 7> cols;
    for (auto& c : cols) c.assign(n, 0.0);

    if (spec.alpha > 0.0 && n > 1) {
        const CoeffEngine engine(spec, omega0, grid.back(), settings);
        const double a2 = spec.alpha * spec.alpha;
        auto work = [&](std::size_t k) {
            const RawCoeffs raw = engine.eval(grid[k]);
            cols[0][k] = a2 * raw.d_fv;
            cols[1][k] = a2 * raw.g_fv;
            cols[2][k] = a2 * raw.pi_fv;
            cols[3][k] = a2 * raw.r_fv;
            cols[4][k] = a2 * raw.d_rwa;
            cols[5][k] = a2 * raw.g_rwa;
            cols[6][k] = a2 * raw.r_rwa;
        };
        unsigned workers = jobs ? jobs : std::thread::hardware_concurrency();
        workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
        if (workers == 1) {
            for (std::size_t k = 0; k < n; ++k) work(k);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned th = 0; th < workers; ++th) {
                pool.emplace_back([&, th]() {
                    for (std::size_t k = th; k < n; k += workers) work(k);
                });
            }
            for (auto& t : pool) t.join();
        }
    }
    return CoefficientTable(grid, std::move(cols), spec, omega0, settings);
}

namespace {

struct SignedPair {
    double sum;   // delta + gamma
    double diff;  // delta - gamma
};

std::vector<LindbladInterval> scan_windows(const std::vector<double>& grid,
                                           const std::vector<SignedPair>& p,
                                           DissipatorModel model) {
    auto ok = [&](std::size_t k) { return p[k].sum >= 0.0 && p[k].diff >= 0.0; };
    std::vector<LindbladInterval> out;
    if (grid.empty()) return out;
    if (grid.size() == 1) {
        out.push_back({grid[0], grid[0], model, ok(0)});
        return out;
    }
    double begin = grid.front();
    bool state = ok(0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const bool next = ok(k + 1);
        if (next == state) continue;
        // Linear crossing time of whichever component flips sign. When
        // leaving the Lindblad region take the earliest crossing, when
        // entering take the latest (both components must be >= 0).
        double crossing = state ? grid[k + 1] : grid[k];
        for (auto get : {+[](const SignedPair& q) { return q.sum; },
                         +[](const SignedPair& q) { return q.diff; }}) {
            const double a = get(p[k]);
            const double b = get(p[k + 1]);
            if ((a >= 0.0) == (b >= 0.0)) continue;
            const double tc = grid[k] + (grid[k + 1] - grid[k]) * (0.0 - a) / (b - a);
            crossing = state ? std::min(crossing, tc) : std::max(crossing, tc);
        }
        out.push_back({begin, crossing, model, state});
        begin = crossing;
        state = next;
    }
    out.push_back({begin, grid.back(), model, state});
    return out;
}

}  // namespace

std::vector<LindbladInterval> lindblad_window(const CoefficientTable& table,
                                              DissipatorModel model) {
    if (table.grid().empty()) throw std::invalid_argument("lindblad_window: empty table");
    const std::size_t n = table.grid().size();
    std::vector<SignedPair> p(n);
    const auto& d = model == DissipatorModel::fv_rwa ? table.delta_fv() : table.delta_rwa();
    const auto& g = model == DissipatorModel::fv_rwa ? table.gamma_fv() : table.gamma_rwa();
    for (std::size_t k = 0; k < n; ++k) p[k] = {d[k] + g[k], d[k] - g[k]};
    return scan_windows(table.grid(), p, model);
}

std::vector<LindbladInterval> lindblad_window(const CoefficientTable& table) {
    auto out = lindblad_window(table, DissipatorModel::fv_rwa);
    auto rw = lindblad_window(table, DissipatorModel::rw);
    out.insert(out.end(), rw.begin(), rw.end());
    return out;
}

void write_coefficients_csv(const CoefficientTable& table, std::ostream& os) {
    os << "t,delta_fv,gamma_fv,pi_fv,r_fv,delta_rwa,gamma_rwa,r_rwa\n";
    const auto& g = table.grid();
    for (std::size_t k = 0; k < g.size(); ++k) {
        put_double_17(os, g[k]);
        for (const auto* col :
             {&table.delta_fv(), &table.gamma_fv(), &table.pi_fv(), &table.r_fv(),
              &table.delta_rwa(), &table.gamma_rwa(), &table.r_rwa()}) {
            os.put(',');
            put_double_17(os, (*col)[k]);
        }
        os.put('\n');
    }
}

void write_coefficients_csv(const CoefficientTable& table,
                            const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_coefficients_csv(table, os);
}

}  // namespace oscbath
