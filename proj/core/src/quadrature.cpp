#include "reson/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace reson {

namespace {

// QUADPACK dqk15 abscissae and weights.
constexpr Real xgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144838258730L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
constexpr Real wgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr Real wg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <typename T>
void gk15(const std::function<T(Real)>& f, Real a, Real b, T& result, Real& err) {
    const Real c = (a + b) / 2, h = (b - a) / 2;
    T fc = f(c);
    T res_g = fc * wg[3];
    T res_k = fc * wgk[7];
    for (int j = 0; j < 7; ++j) {
        T f1 = f(c - h * xgk[j]);
        T f2 = f(c + h * xgk[j]);
        res_k += wgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += wg[j / 2] * (f1 + f2);
    }
    result = res_k * h;
    err = std::abs((res_k - res_g) * h);
}

template <typename T>
struct Segment {
    Real a, b, err;
    T value;
    bool operator<(const Segment& o) const { return err < o.err; }
};

template <typename T>
T adapt(const std::function<T(Real)>& f, Real a, Real b, Real abs_tol, int max_sub) {
    std::priority_queue<Segment<T>> heap;
    Segment<T> s{a, b, 0, T{}};
    gk15(f, a, b, s.value, s.err);
    heap.push(s);
    T total = s.value;
    Real total_err = s.err;
    int n = 1;
    while (total_err > abs_tol) {
        if (n >= max_sub)
            throw ConvergenceError("adaptive quadrature: subdivision budget exhausted");
        Segment<T> worst = heap.top();
        heap.pop();
        Real mid = (worst.a + worst.b) / 2;
        Segment<T> left{worst.a, mid, 0, T{}}, right{mid, worst.b, 0, T{}};
        gk15(f, left.a, left.b, left.value, left.err);
        gk15(f, right.a, right.b, right.value, right.err);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    return total;
}

}  // namespace

Real integrate_adaptive(const std::function<Real(Real)>& f, Real a, Real b,
                        Real abs_tol, int max_subdivisions) {
    return adapt<Real>(f, a, b, abs_tol, max_subdivisions);
}

Cplx integrate_adaptive(const std::function<Cplx(Real)>& f, Real a, Real b,
                        Real abs_tol, int max_subdivisions) {
    return adapt<Cplx>(f, a, b, abs_tol, max_subdivisions);
}

void gauss_legendre(int n, Real a, Real b, std::vector<Real>& nodes,
                    std::vector<Real>& weights) {
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on P_n with the three-term recurrence.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        Real dp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        Real w = 2 / ((1 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    const Real mid = (a + b) / 2, half = (b - a) / 2;
    for (int i = 0; i < n; ++i) {
        nodes[i] = mid - half * nodes[i];
        weights[i] *= half;
    }
    std::sort(nodes.begin(), nodes.end());
}

}  // namespace reson
