#include "reson/ode.hpp"

#include <algorithm>
#include <cmath>

namespace reson {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr Real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr Real a21 = 1.0L / 5;
constexpr Real a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr Real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr Real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561,
               a54 = -212.0L / 729;
constexpr Real a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247,
               a64 = 49.0L / 176, a65 = -5103.0L / 18656;
constexpr Real a71 = 35.0L / 384, a73 = 500.0L / 1113, a74 = 125.0L / 192,
               a75 = -2187.0L / 6784, a76 = 11.0L / 84;
constexpr Real e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920,
               e5 = -17253.0L / 339200, e6 = 22.0L / 525, e7 = -1.0L / 40;
constexpr Real d1 = -12715105075.0L / 11282082432.0L, d3 = 87487479700.0L / 32700410799.0L,
               d4 = -10690763975.0L / 1880347072.0L, d5 = 701980252875.0L / 199316789632.0L,
               d6 = -1453857185.0L / 822651844.0L, d7 = 69997945.0L / 29380423.0L;

Cplx dense_eval(const std::array<Cplx, 5>& r, Real s) {
    return r[0] + s * (r[1] + (1 - s) * (r[2] + s * (r[3] + (1 - s) * r[4])));
}

Cplx dense_deriv(const std::array<Cplx, 5>& r, Real s, Real h) {
    Cplx d = r[1] + (1 - 2 * s) * r[2] + s * (2 - 3 * s) * r[3] +
             2 * s * (1 - s) * (1 - 2 * s) * r[4];
    return d / h;
}

}  // namespace

const DenseStep& Trajectory::locate(Real x) const {
    const bool fwd = x_end_ >= x_begin_;
    // binary search over step origins
    std::size_t lo = 0, hi = steps_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        bool before = fwd ? steps_[mid].x0 <= x : steps_[mid].x0 >= x;
        if (before) lo = mid;
        else hi = mid - 1;
    }
    return steps_[lo];
}

Cplx Trajectory::eval(Real x, std::size_t component) const {
    if (steps_.empty()) return y_end_[component];
    const DenseStep& st = locate(x);
    return dense_eval(st.rcont[component], (x - st.x0) / st.h);
}

Cplx Trajectory::derivative(Real x, std::size_t component) const {
    if (steps_.empty()) return 0;
    const DenseStep& st = locate(x);
    return dense_deriv(st.rcont[component], (x - st.x0) / st.h, st.h);
}

State Trajectory::eval(Real x) const {
    State out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = eval(x, i);
    return out;
}

void Trajectory::append(Trajectory&& other) {
    if (other.dim_ != dim_) throw SolverError("Trajectory::append: dimension mismatch");
    if (std::abs(other.x_begin_ - x_end_) > 1e-12L * (1 + std::abs(x_end_)))
        throw SolverError("Trajectory::append: pieces are not contiguous");
    steps_.insert(steps_.end(), std::make_move_iterator(other.steps_.begin()),
                  std::make_move_iterator(other.steps_.end()));
    x_end_ = other.x_end_;
    y_end_ = std::move(other.y_end_);
}

Trajectory integrate(const Rhs& f, Real x_from, Real x_to, const State& y0, Real tol,
                     const std::vector<Real>& mandatory, int max_steps, Real hmax) {
    if (!(tol > 0)) throw SolverError("integrate: tol must be positive");
    const std::size_t n = y0.size();
    const int dir = x_to >= x_from ? 1 : -1;

    // checkpoints the stepper must hit exactly
    std::vector<Real> stops;
    for (Real m : mandatory)
        if ((m - x_from) * dir > 0 && (x_to - m) * dir > 0) stops.push_back(m);
    stops.push_back(x_to);
    std::sort(stops.begin(), stops.end());
    if (dir < 0) std::reverse(stops.begin(), stops.end());

    Trajectory traj;
    traj.x_begin_ = x_from;
    traj.x_end_ = x_to;
    traj.dim_ = n;

    State y = y0, ynew(n), yerr(n), ystage(n);
    std::array<State, 7> k;
    for (auto& ki : k) ki.resize(n);
    Real x = x_from;
    f(x, y, k[0]);

    Real h = dir * std::min<Real>(0.1L, std::abs(x_to - x_from) / 10);
    if (h == 0) h = dir * 1e-3L;
    if (hmax > 0 && std::abs(h) > hmax) h = dir * hmax;
    Real errold = 1e-4L;
    std::size_t next_stop = 0;
    int steps = 0;

    while ((x_to - x) * dir > 0) {
        if (++steps > max_steps) throw ConvergenceError("integrate: step budget exhausted");
        bool hit_stop = false;
        if ((x + h - stops[next_stop]) * dir >= 0) {
            h = stops[next_stop] - x;
            hit_stop = true;
        }
        if (std::abs(h) < 1e-14L * (1 + std::abs(x)))
            throw ConvergenceError("integrate: step size underflow (stiffness or singularity)");

        auto stage = [&](Real c, std::initializer_list<std::pair<int, Real>> terms, int out) {
            for (std::size_t i = 0; i < n; ++i) {
                Cplx acc = 0;
                for (auto [j, a] : terms) acc += a * k[j][i];
                ystage[i] = y[i] + h * acc;
            }
            f(x + c * h, ystage, k[out]);
        };
        stage(c2, {{0, a21}}, 1);
        stage(c3, {{0, a31}, {1, a32}}, 2);
        stage(c4, {{0, a41}, {1, a42}, {2, a43}}, 3);
        stage(c5, {{0, a51}, {1, a52}, {2, a53}, {3, a54}}, 4);
        stage(1, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}}, 5);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] +
                                  a75 * k[4][i] + a76 * k[5][i]);
        f(x + h, ynew, k[6]);
        Real err = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Cplx e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                          e6 * k[5][i] + e7 * k[6][i]);
            Real sc = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            Real q = std::abs(e) / sc;
            err += q * q;
        }
        err = std::sqrt(err / n);

        // PI controller (Hairer's dopri5 defaults)
        const Real beta = 0.04L, expo = 0.2L - beta * 0.75L;
        Real fac11 = std::pow(err, expo);
        Real fac = fac11 / std::pow(errold, beta);
        fac = std::max(0.1L, std::min(5.0L, 0.9L / fac));

        if (err <= 1) {
            DenseStep st;
            st.x0 = x;
            st.h = h;
            st.rcont.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                Cplx ydiff = ynew[i] - y[i];
                Cplx bspl = h * k[0][i] - ydiff;
                st.rcont[i][0] = y[i];
                st.rcont[i][1] = ydiff;
                st.rcont[i][2] = bspl;
                st.rcont[i][3] = ydiff - h * k[6][i] - bspl;
                st.rcont[i][4] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] +
                                      d5 * k[4][i] + d6 * k[5][i] + d7 * k[6][i]);
            }
            traj.steps_.push_back(std::move(st));
            x += h;
            y = ynew;
            k[0] = k[6];  // FSAL
            errold = std::max(err, (Real)1e-4L);
            if (hit_stop && next_stop + 1 < stops.size()) {
                ++next_stop;
                // restart the FSAL derivative on the far side of a breakpoint
                f(x, y, k[0]);
            }
            h *= fac;
            if (hmax > 0 && std::abs(h) > hmax) h = dir * hmax;
        } else {
            h *= std::min(fac, (Real)1);
        }
    }
    traj.y_end_ = y;
    return traj;
}

}  // namespace reson
