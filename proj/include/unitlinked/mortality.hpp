#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unitlinked {

/// One row of a deaths-per-100000 table.
struct MortalityRow {
    double age;    // midpoint age of the band; the open-ended band keeps its lower edge
    double men;
    double women;
    double total;
};

/// Parses a CSV table with header "age,men,women,total". Ages must be strictly
/// increasing and counts non-negative; errors cite the 1-based line number.
std::vector<MortalityRow> load_mortality_table(std::istream& in,
                                               const std::string& source_name);

std::vector<MortalityRow> load_mortality_table_file(const std::string& path);

struct HazardObservation {
    double age;
    double rate;  // deaths per capita per year
};

/// Deaths per 100000 -> per-capita annual rate.
std::vector<HazardObservation> empirical_hazard(
    const std::vector<MortalityRow>& rows);

/// Fitted mu(t) = a + b e^{c t}.
struct GompertzMakehamFit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double sse = 0.0;        // residual sum of squares over the fit window
    double window_lo = 0.0;
    double window_hi = 0.0;
};

/// Least-squares fit of a + b e^{c x} to the observations inside
/// [window_lo, window_hi]. For fixed c the problem is linear in (a, b);
/// c is located by a coarse scan over [1e-4, 0.5] refined by golden-section
/// search. If the unconstrained optimum has b < 0 or a + b < 0 the best
/// boundary solution (b = 0, or a = -b) is taken instead, so the fitted
/// hazard is non-negative for all non-negative ages.
GompertzMakehamFit fit_gompertz_makeham(const std::vector<HazardObservation>& obs,
                                        double window_lo, double window_hi);

/// mu(age) = a + b e^{c age}.
double hazard(const GompertzMakehamFit& fit, double age);

/// T-year survival of a life aged x:
///   exp(-(a T + b/c (e^{c(x+T)} - e^{c x}))).
double survival_probability(const GompertzMakehamFit& fit, double x, double T);

}  // namespace unitlinked
