#include "hsconvex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hsconvex/errors.hpp"

namespace hsconvex {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (nodes on [-1, 1]).
// Odd-indexed abscissae carry the embedded Gauss rule.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

constexpr int kPanelEvals = 15;

struct Panel {
    double a, b;
    double value;
    double error;
    long order;  // creation index, breaks ties deterministically
};

// Max-heap on local error; earlier panels win ties.
bool heap_less(const Panel& x, const Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order;
}

void gk15(const RealFn& f, double a, double b, double& value, double& error) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    auto sample = [&](double x) {
        double v = f(x);
        if (!std::isfinite(v))
            throw EvalError(EvalError::Kind::NonFinite, x, "integrand is non-finite");
        return v;
    };

    double fc = sample(center);
    double kronrod = kKronrodW[7] * fc;
    double gauss = kGaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = half * kNodes[i];
        double fsum = sample(center - dx) + sample(center + dx);
        kronrod += kKronrodW[i] * fsum;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
    }
    value = kronrod * half;
    error = std::fabs((kronrod - gauss) * half);
}

// Sum panel values left to right with compensation; fixed order keeps the
// reported value reproducible.
QuadResult reduce(std::vector<Panel> panels, long evals, bool converged) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (const Panel& p : panels) {
        double y = p.value - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += p.error;
    }
    return {sum, err, evals, converged};
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opt) {
    if (!(a < b)) throw UsageError("integration requires a < b");
    if (!(opt.tol > 0.0)) throw UsageError("integration tolerance must be positive");

    std::vector<Panel> heap;
    long evals = 0;
    long order = 0;
    double err_total = 0.0;

    auto push = [&](double lo, double hi) {
        Panel p{lo, hi, 0.0, 0.0, order++};
        gk15(f, lo, hi, p.value, p.error);
        evals += kPanelEvals;
        err_total += p.error;
        heap.push_back(p);
        std::push_heap(heap.begin(), heap.end(), heap_less);
    };

    push(a, b);

    double halfway_error = -1.0;
    const long half_budget = opt.budget / 2;

    while (err_total > opt.tol) {
        if (halfway_error < 0.0 && evals >= half_budget) halfway_error = err_total;

        if (evals + 2 * kPanelEvals > opt.budget) {
            QuadResult partial = reduce(std::move(heap), evals, false);
            if (halfway_error >= 0.0 && partial.error_estimate >= halfway_error)
                throw QuadratureDivergence(
                    partial, "integral failed to converge within the evaluation budget");
            return partial;
        }

        std::pop_heap(heap.begin(), heap.end(), heap_less);
        Panel worst = heap.back();
        heap.pop_back();

        double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Panel narrower than floating-point resolution; accept its value.
            err_total -= worst.error;
            worst.error = 0.0;
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), heap_less);
            continue;
        }
        err_total -= worst.error;
        push(worst.a, mid);
        push(mid, worst.b);
    }

    return reduce(std::move(heap), evals, true);
}

QuadResult integrate_kink_aware(const RealFn& f, double a, double b,
                                std::span<const double> kinks, const QuadOptions& opt) {
    std::vector<double> cuts{a};
    for (double k : kinks) {
        if (!(a < k && k < b)) throw UsageError("kink abscissae must lie strictly inside (a, b)");
        if (k <= cuts.back()) throw UsageError("kink abscissae must be strictly increasing");
        cuts.push_back(k);
    }
    cuts.push_back(b);

    QuadOptions piece_opt = opt;
    piece_opt.tol = opt.tol / static_cast<double>(cuts.size() - 1);
    piece_opt.budget = opt.budget / static_cast<long>(cuts.size() - 1);

    QuadResult total{0.0, 0.0, 0, true};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadResult piece = integrate(f, cuts[i], cuts[i + 1], piece_opt);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
        total.evaluations += piece.evaluations;
        total.converged = total.converged && piece.converged;
    }
    return total;
}

}  // namespace hsconvex
