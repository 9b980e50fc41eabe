#include "etx/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include "etx/errors.hpp"
#include "etx/qmath.hpp"

namespace etx {

namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kHermTol = 1e-9;
constexpr double kEigSlack = -1e-8;

int ket_index(std::string_view which) {
    if (which == "ee") return 0;
    if (which == "eg") return 1;
    if (which == "ge") return 2;
    if (which == "gg") return 3;
    throw InvalidParameters("QubitState::ket: unknown basis label");
}

}  // namespace

QubitState::QubitState(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.dim() != 4) throw DimensionMismatch("QubitState expects a 4x4 matrix");
    if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kTraceTol)
        throw InvalidParameters("QubitState: trace differs from 1");
    if (rho_.hermiticity_defect() > kHermTol)
        throw InvalidParameters("QubitState: matrix is not Hermitian");
    ComplexMatrix h = rho_;
    h.hermitize();
    if (hermitian_eigenvalues(h, 1e-8).front() < kEigSlack)
        throw InvalidParameters("QubitState: negative eigenvalue beyond tolerance");
}

QubitState QubitState::ket(std::string_view which) {
    const int k = ket_index(which);
    ComplexMatrix rho(4);
    rho(k, k) = 1.0;
    return QubitState(std::move(rho));
}

NegativityResult negativity(const QubitState& state) {
    ComplexMatrix pt = partial_transpose(state.rho());
    pt.hermitize();
    const double mn = hermitian_eigenvalues(pt, 1e-8).front();
    return {std::max(0.0, -2.0 * mn), mn};
}

double linearized_entropy(const QubitState& state) {
    const double purity = (state.rho() * state.rho()).trace().real();
    const double s = (4.0 / 3.0) * (1.0 - purity);
    return std::clamp(s, 0.0, 1.0);
}

namespace {

// RHS of the master equation with a prebuilt Kossakowski matrix, scaled so
// that the integration variable is tau = gamma1 * t.
ComplexMatrix generator_rhs(const ComplexMatrix& d, double inv_gamma1, const ComplexMatrix& rho) {
    static const ComplexMatrix* ops = [] {
        static ComplexMatrix o[4];
        const ComplexMatrix sx(2, {0.0, 1.0, 1.0, 0.0});
        const ComplexMatrix sy(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
        const ComplexMatrix id2 = ComplexMatrix::identity(2);
        o[0] = kron(sx, id2);
        o[1] = kron(sy, id2);
        o[2] = kron(id2, sx);
        o[3] = kron(id2, sy);
        return o;
    }();
    static const ComplexMatrix* prods = [] {
        static ComplexMatrix p[16];
        for (int b = 0; b < 4; ++b)
            for (int a = 0; a < 4; ++a) p[4 * b + a] = ops[b] * ops[a];
        return p;
    }();
    ComplexMatrix out(4);
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) {
            const Complex w = d(al, be) * inv_gamma1;
            if (w == 0.0) continue;
            out += w * (ops[al] * rho * ops[be]);
            const ComplexMatrix& oba = prods[4 * be + al];
            out -= (0.5 * w) * (oba * rho + rho * oba);
        }
    return out;
}

struct Dopri5 {
    // Dormand-Prince 5(4) tableau.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // embedded 4th-order weights
    static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                            e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;
};

template <typename Rhs>
void dopri_step(const Rhs& f, const ComplexMatrix& y, double h, ComplexMatrix& y5,
                double& err_ratio, double rtol, double atol) {
    using D = Dopri5;
    const ComplexMatrix k1 = f(y);
    const ComplexMatrix k2 = f(y + Complex(h * D::a21, 0) * k1);
    const ComplexMatrix k3 = f(y + Complex(h * D::a31, 0) * k1 + Complex(h * D::a32, 0) * k2);
    const ComplexMatrix k4 = f(y + Complex(h * D::a41, 0) * k1 + Complex(h * D::a42, 0) * k2 +
                               Complex(h * D::a43, 0) * k3);
    const ComplexMatrix k5 = f(y + Complex(h * D::a51, 0) * k1 + Complex(h * D::a52, 0) * k2 +
                               Complex(h * D::a53, 0) * k3 + Complex(h * D::a54, 0) * k4);
    const ComplexMatrix k6 = f(y + Complex(h * D::a61, 0) * k1 + Complex(h * D::a62, 0) * k2 +
                               Complex(h * D::a63, 0) * k3 + Complex(h * D::a64, 0) * k4 +
                               Complex(h * D::a65, 0) * k5);
    y5 = y + Complex(h * D::b1, 0) * k1 + Complex(h * D::b3, 0) * k3 + Complex(h * D::b4, 0) * k4 +
         Complex(h * D::b5, 0) * k5 + Complex(h * D::b6, 0) * k6;
    const ComplexMatrix k7 = f(y5);
    const ComplexMatrix y4 = y + Complex(h * D::e1, 0) * k1 + Complex(h * D::e3, 0) * k3 +
                             Complex(h * D::e4, 0) * k4 + Complex(h * D::e5, 0) * k5 +
                             Complex(h * D::e6, 0) * k6 + Complex(h * D::e7, 0) * k7;
    err_ratio = 0.0;
    for (int i = 0; i < y.dim(); ++i)
        for (int j = 0; j < y.dim(); ++j) {
            const double scale =
                atol + rtol * std::max(std::abs(y(i, j)), std::abs(y5(i, j)));
            err_ratio = std::max(err_ratio, std::abs(y5(i, j) - y4(i, j)) / scale);
        }
}

void append_sample(Trajectory& tr, double tau, ComplexMatrix rho) {
    if (rho.hermiticity_defect() > kHermTol)
        throw ConvergenceFailure("evolution: sampled state lost hermiticity");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kTraceTol)
        throw ConvergenceFailure("evolution: sampled state lost normalization");
    rho.hermitize();
    if (hermitian_eigenvalues(rho, 1e-8).front() < kEigSlack)
        throw PositivityLoss("evolution lost positivity beyond tolerance");
    QubitState state(std::move(rho));
    const NegativityResult neg = negativity(state);
    tr.times.push_back(tau);
    tr.negativity.push_back(neg.e_npt);
    tr.min_pt_eigenvalue.push_back(neg.min_pt_eig);
    tr.linearized_entropy.push_back(linearized_entropy(state));
    tr.states.push_back(std::move(state));
}

std::vector<double> uniform_grid(double tau_max, int samples) {
    if (!(tau_max > 0.0)) throw InvalidParameters("evolution: tau_max must be positive");
    if (samples < 2) throw InvalidParameters("evolution: need at least two samples");
    std::vector<double> taus(samples);
    for (int i = 0; i < samples; ++i) taus[i] = tau_max * i / (samples - 1);
    return taus;
}

}  // namespace

Trajectory evolve_rk(const DissipatorSpec& spec, const QubitState& rho0, double tau_max,
                     int samples, double rtol) {
    if (!is_completely_positive(spec))
        throw NotCompletelyPositive("evolve_rk: spec is not completely positive");
    const std::vector<double> taus = uniform_grid(tau_max, samples);
    const ComplexMatrix d = build_kossakowski(spec).assembled();
    const double invg = 1.0 / spec.gamma1;
    auto rhs = [&](const ComplexMatrix& y) { return generator_rhs(d, invg, y); };

    constexpr double atol = 1e-14;
    const double hmin = 1e-13 * tau_max;
    Trajectory tr;
    append_sample(tr, 0.0, rho0.rho());

    ComplexMatrix y = rho0.rho();
    double tau = 0.0;
    double h = std::min(1e-2, tau_max / 100.0);
    for (int k = 1; k < samples; ++k) {
        const double target = taus[k];
        while (tau < target) {
            const bool clipped = tau + h >= target;
            const double hstep = clipped ? target - tau : h;
            ComplexMatrix ynew(4);
            double err = 0.0;
            dopri_step(rhs, y, hstep, ynew, err, rtol, atol);
            if (!std::isfinite(err)) err = 1e6;
            if (err <= 1.0) {
                y = std::move(ynew);
                tau = clipped ? target : tau + hstep;
            }
            const double grow = 0.9 * std::pow(std::max(err, 1e-12), -0.2);
            h = hstep * std::clamp(grow, 0.2, 5.0);
            if (h < hmin)
                throw StepSizeUnderflow("evolve_rk: step size collapsed below tolerance floor");
        }
        append_sample(tr, target, y);
    }
    return tr;
}

Trajectory evolve_expm(const DissipatorSpec& spec, const QubitState& rho0,
                       const std::vector<double>& taus) {
    if (!is_completely_positive(spec))
        throw NotCompletelyPositive("evolve_expm: spec is not completely positive");
    if (taus.empty()) throw InvalidParameters("evolve_expm: empty time grid");
    for (size_t i = 0; i + 1 < taus.size(); ++i)
        if (!(taus[i] < taus[i + 1]))
            throw InvalidParameters("evolve_expm: times must be strictly ascending");
    if (taus.front() < 0.0) throw InvalidParameters("evolve_expm: negative time");

    ComplexMatrix l = assemble_superoperator(spec);
    l *= Complex(1.0 / spec.gamma1, 0.0);

    // Uniform grids reuse a single propagator.
    bool uniform = taus.size() >= 2;
    const double dt0 = taus.size() >= 2 ? taus[1] - taus[0] : 0.0;
    for (size_t i = 0; i + 1 < taus.size(); ++i)
        if (std::abs((taus[i + 1] - taus[i]) - dt0) > 1e-12 * std::max(1.0, dt0)) uniform = false;

    Trajectory tr;
    std::vector<Complex> v = vectorize(rho0.rho());
    if (taus.front() == 0.0) {
        append_sample(tr, 0.0, rho0.rho());
    } else {
        v = mat_vec(matrix_exponential(l, taus.front()), v);
        append_sample(tr, taus.front(), unvectorize(v));
    }
    if (uniform && taus.size() >= 2) {
        const ComplexMatrix prop = matrix_exponential(l, dt0);
        for (size_t i = 1; i < taus.size(); ++i) {
            v = mat_vec(prop, v);
            append_sample(tr, taus[i], unvectorize(v));
        }
    } else {
        for (size_t i = 1; i < taus.size(); ++i) {
            v = mat_vec(matrix_exponential(l, taus[i] - taus[i - 1]), v);
            append_sample(tr, taus[i], unvectorize(v));
        }
    }
    return tr;
}

namespace {

// Reduced equations for n = m, gamma1 = gamma2, c1 = -c2 = c, written in the
// coherence sign convention fixed by the y-Pauli operator definition used in
// the generator (p_eegg here is Re<ee|rho|gg> of the full evolution).
struct BlochRhs {
    double n, c;
    std::array<double, 4> operator()(const std::array<double, 4>& x) const {
        const double up = 0.5 * (n - 1.0);    // upward rate / gamma
        const double down = 0.5 * (n + 1.0);  // downward rate / gamma
        const double pg = 1.0 - x[0] - x[1] - x[2];
        return {
            -2.0 * down * x[0] + up * (x[1] + x[2]) - c * x[3],
            down * x[0] + up * pg - (down + up) * x[1] + c * x[3],
            down * x[0] + up * pg - (down + up) * x[2] + c * x[3],
            -n * x[3] - c * (0.5 - x[1] - x[2]),
        };
    }
};

}  // namespace

std::vector<BlochState> evolve_bloch(double n, double c, double gamma, const BlochState& b0,
                                     double tau_max, int samples) {
    if (!(gamma > 0.0)) throw InvalidParameters("evolve_bloch: gamma must be positive");
    const std::vector<double> taus = uniform_grid(tau_max, samples);
    const BlochRhs rhs{n, c};  // time variable is tau = gamma t

    std::array<double, 4> y{b0.p_eeee, b0.p_egeg, b0.p_gege, b0.p_eegg};
    std::vector<BlochState> out;
    out.reserve(samples);
    out.push_back(b0);

    constexpr double rtol = 1e-11, atol = 1e-14;
    double tau = 0.0;
    double h = std::min(1e-2, tau_max / 100.0);
    const double hmin = 1e-13 * tau_max;
    using D = Dopri5;
    auto axpy = [](const std::array<double, 4>& y0, std::initializer_list<std::pair<double, const std::array<double, 4>*>> terms) {
        std::array<double, 4> r = y0;
        for (const auto& [w, k] : terms)
            for (int i = 0; i < 4; ++i) r[i] += w * (*k)[i];
        return r;
    };
    for (int s = 1; s < samples; ++s) {
        const double target = taus[s];
        while (tau < target) {
            const bool clipped = tau + h >= target;
            const double hs = clipped ? target - tau : h;
            const auto k1 = rhs(y);
            const auto k2 = rhs(axpy(y, {{hs * D::a21, &k1}}));
            const auto k3 = rhs(axpy(y, {{hs * D::a31, &k1}, {hs * D::a32, &k2}}));
            const auto k4 = rhs(axpy(y, {{hs * D::a41, &k1}, {hs * D::a42, &k2}, {hs * D::a43, &k3}}));
            const auto k5 = rhs(axpy(y, {{hs * D::a51, &k1}, {hs * D::a52, &k2}, {hs * D::a53, &k3}, {hs * D::a54, &k4}}));
            const auto k6 = rhs(axpy(y, {{hs * D::a61, &k1}, {hs * D::a62, &k2}, {hs * D::a63, &k3}, {hs * D::a64, &k4}, {hs * D::a65, &k5}}));
            const auto y5 = axpy(y, {{hs * D::b1, &k1}, {hs * D::b3, &k3}, {hs * D::b4, &k4}, {hs * D::b5, &k5}, {hs * D::b6, &k6}});
            const auto k7 = rhs(y5);
            const auto y4 = axpy(y, {{hs * D::e1, &k1}, {hs * D::e3, &k3}, {hs * D::e4, &k4}, {hs * D::e5, &k5}, {hs * D::e6, &k6}, {hs * D::e7, &k7}});
            double err = 0.0;
            for (int i = 0; i < 4; ++i) {
                const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(y5[i] - y4[i]) / scale);
            }
            if (!std::isfinite(err)) err = 1e6;
            if (err <= 1.0) {
                y = y5;
                tau = clipped ? target : tau + hs;
            }
            h = hs * std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
            if (h < hmin)
                throw StepSizeUnderflow("evolve_bloch: step size collapsed below tolerance floor");
        }
        out.push_back(BlochState{y[0], y[1], y[2], y[3]});
    }
    return out;
}

std::vector<BlochState> evolve_bloch(const DissipatorSpec& spec, const BlochState& b0,
                                     double tau_max, int samples) {
    if (spec.n != spec.m || spec.gamma1 != spec.gamma2 || spec.c1 != -spec.c2)
        throw UnsupportedRegime("evolve_bloch: requires n = m, gamma1 = gamma2, c1 = -c2");
    return evolve_bloch(spec.n, spec.c1, spec.gamma1, b0, tau_max, samples);
}

QubitState bloch_to_state(const BlochState& b) {
    ComplexMatrix rho(4);
    rho(0, 0) = b.p_eeee;
    rho(1, 1) = b.p_egeg;
    rho(2, 2) = b.p_gege;
    rho(3, 3) = 1.0 - b.p_eeee - b.p_egeg - b.p_gege;
    rho(0, 3) = b.p_eegg;
    rho(3, 0) = b.p_eegg;
    return QubitState(std::move(rho));
}

BlochState state_to_bloch(const QubitState& s) {
    const ComplexMatrix& r = s.rho();
    return {r(0, 0).real(), r(1, 1).real(), r(2, 2).real(), r(0, 3).real()};
}

void Trajectory::write_csv(std::ostream& out) const {
    out << "tau,negativity,min_pt_eig,linentropy,rho_eeee,rho_egeg,rho_gege,re_rho_eegg,im_rho_eegg\n";
    char buf[64];
    auto put = [&](double x, char sep) {
        std::snprintf(buf, sizeof buf, "%.12g", x);
        out << buf << sep;
    };
    for (size_t i = 0; i < times.size(); ++i) {
        const ComplexMatrix& r = states[i].rho();
        put(times[i], ',');
        put(negativity[i], ',');
        put(min_pt_eigenvalue[i], ',');
        put(linearized_entropy[i], ',');
        put(r(0, 0).real(), ',');
        put(r(1, 1).real(), ',');
        put(r(2, 2).real(), ',');
        put(r(0, 3).real(), ',');
        put(r(0, 3).imag(), '\n');
    }
}

}  // namespace etx
