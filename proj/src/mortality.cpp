#include "unitlinked/mortality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace unitlinked {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) fields.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_number(const std::string& token, const std::string& where) {
    const std::string t = trim(token);
    double value = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw std::invalid_argument(where + ": not a number: '" + token + "'");
    return value;
}

}  // namespace

std::vector<MortalityRow> load_mortality_table(std::istream& in,
                                               const std::string& source_name) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line))
        throw std::invalid_argument(source_name + ": empty input");
    ++lineno;
    {
        auto header = split_csv(line);
        if (header != std::vector<std::string>{"age", "men", "women", "total"})
            throw std::invalid_argument(source_name +
                                        ":1: expected header 'age,men,women,total'");
    }
    std::vector<MortalityRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);
        auto fields = split_csv(line);
        if (fields.size() != 4)
            throw std::invalid_argument(where + ": expected 4 fields, got " +
                                        std::to_string(fields.size()));
        MortalityRow row;
        row.age = parse_number(fields[0], where);
        row.men = parse_number(fields[1], where);
        row.women = parse_number(fields[2], where);
        row.total = parse_number(fields[3], where);
        if (row.men < 0.0 || row.women < 0.0 || row.total < 0.0)
            throw std::invalid_argument(where + ": negative death count");
        if (!rows.empty() && !(row.age > rows.back().age))
            throw std::invalid_argument(where + ": ages must be strictly increasing");
        rows.push_back(row);
    }
    if (rows.empty())
        throw std::invalid_argument(source_name + ": no data rows");
    return rows;
}

std::vector<MortalityRow> load_mortality_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open mortality table: " + path);
    return load_mortality_table(in, path);
}

std::vector<HazardObservation> empirical_hazard(
    const std::vector<MortalityRow>& rows) {
    std::vector<HazardObservation> obs;
    obs.reserve(rows.size());
    for (const auto& row : rows) obs.push_back({row.age, row.total / 100000.0});
    return obs;
}

namespace {

struct LinearFit {
    double a = 0.0;
    double b = 0.0;
    double sse = 0.0;
};

double sse_of(double a, double b, double c,
              const std::vector<HazardObservation>& obs) {
    double sse = 0.0;
    for (const auto& o : obs) {
        const double resid = a + b * std::exp(c * o.age) - o.rate;
        sse += resid * resid;
    }
    return sse;
}

// Best (a, b) for fixed c under b >= 0 and a + b >= 0. The unconstrained
// normal equations are tried first; if infeasible, the two boundary problems
// (b = 0 and a = -b) are solved and the better feasible one is kept.
LinearFit solve_ab(double c, const std::vector<HazardObservation>& obs) {
    const double n = static_cast<double>(obs.size());
    double se = 0.0, see = 0.0, sy = 0.0, sey = 0.0;
    for (const auto& o : obs) {
        const double e = std::exp(c * o.age);
        se += e;
        see += e * e;
        sy += o.rate;
        sey += e * o.rate;
    }
    const double det = n * see - se * se;
    if (det > 0.0) {
        const double a = (see * sy - se * sey) / det;
        const double b = (n * sey - se * sy) / det;
        if (b >= 0.0 && a + b >= 0.0) return {a, b, sse_of(a, b, c, obs)};
    }
    LinearFit best;
    best.a = sy / n;  // b = 0; mean of non-negative rates, so feasible
    best.b = 0.0;
    best.sse = sse_of(best.a, 0.0, c, obs);
    double num = 0.0, den = 0.0;
    for (const auto& o : obs) {
        const double g = std::exp(c * o.age) - 1.0;
        num += g * o.rate;
        den += g * g;
    }
    if (den > 0.0 && num > 0.0) {
        const double b = num / den;
        const double sse = sse_of(-b, b, c, obs);
        if (sse < best.sse) best = {-b, b, sse};
    }
    return best;
}

}  // namespace

GompertzMakehamFit fit_gompertz_makeham(const std::vector<HazardObservation>& obs,
                                        double window_lo, double window_hi) {
    if (!(window_lo <= window_hi))
        throw std::invalid_argument("fit_gompertz_makeham: empty age window");
    std::vector<HazardObservation> sel;
    for (const auto& o : obs)
        if (o.age >= window_lo && o.age <= window_hi) sel.push_back(o);
    if (sel.size() < 4)
        throw std::invalid_argument(
            "fit_gompertz_makeham: need at least 4 observations in window, have " +
            std::to_string(sel.size()));
    if (std::all_of(sel.begin(), sel.end(),
                    [](const HazardObservation& o) { return o.rate == 0.0; }))
        throw std::invalid_argument(
            "fit_gompertz_makeham: all rates in window are zero");

    constexpr double c_lo = 1e-4;
    constexpr double c_hi = 0.5;
    constexpr int grid_points = 200;
    int best_idx = 0;
    double best_sse = INFINITY;
    for (int j = 0; j < grid_points; ++j) {
        const double c = c_lo + (c_hi - c_lo) * j / (grid_points - 1.0);
        const double sse = solve_ab(c, sel).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_idx = j;
        }
    }
    const double step = (c_hi - c_lo) / (grid_points - 1.0);
    double lo = std::max(c_lo, c_lo + (best_idx - 1) * step);
    double hi = std::min(c_hi, c_lo + (best_idx + 1) * step);

    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = solve_ab(x1, sel).sse;
    double f2 = solve_ab(x2, sel).sse;
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = solve_ab(x1, sel).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = solve_ab(x2, sel).sse;
        }
    }
    const double c = 0.5 * (lo + hi);
    const LinearFit ab = solve_ab(c, sel);
    GompertzMakehamFit fit;
    fit.a = ab.a;
    fit.b = ab.b;
    fit.c = c;
    fit.sse = ab.sse;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    return fit;
}

double hazard(const GompertzMakehamFit& fit, double age) {
    return fit.a + fit.b * std::exp(fit.c * age);
}

double survival_probability(const GompertzMakehamFit& fit, double x, double T) {
    if (!(x >= 0.0)) throw std::invalid_argument("survival_probability: x must be >= 0");
    if (!(T >= 0.0)) throw std::invalid_argument("survival_probability: T must be >= 0");
    double integral = fit.a * T;
    if (fit.b != 0.0)
        integral +=
            fit.b / fit.c * (std::exp(fit.c * (x + T)) - std::exp(fit.c * x));
    return std::exp(-integral);
}

}  // namespace unitlinked
