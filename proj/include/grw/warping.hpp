#pragma once

#include <string>
#include <string_view>

namespace grw {

enum class Family { I, II, III };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

// Open interval (lower, upper); either bound may be infinite.
struct Interval {
    double lower;
    double upper;

    bool contains(double x) const { return x > lower && x < upper; }
};

// Warping function b of a GRW spacetime satisfying 2 b b' - n b'' = 0:
//   I:   b = c            on R
//   II:  b = n c tan(ct)  on (0, pi/(2c))
//   III: b = -n c tanh(ct) on (-inf, 0)
class WarpingFunction {
public:
    // Relative guard kept from the endpoints where b diverges.
    static constexpr double kEndpointMargin = 1e-12;

    static WarpingFunction make(Family family, double c, int n);

    Family family() const { return family_; }
    double c() const { return c_; }
    int n() const { return n_; }
    Interval interval() const;

    // Largest admissible argument (upper bound minus the margin for Type II).
    double upper_guard() const;
    // Throws DomainError unless t lies strictly inside the guarded interval.
    void require_inside(double t) const;
    bool inside(double t) const;

    double b(double t) const;
    double db(double t) const;
    double d2b(double t) const;
    // b, b' or b'' for order 0, 1, 2.
    double eval(double t, int order) const;

    // d = b^2 - n b', constant for all three families.
    double soliton_constant() const;

    // Quotients that stay finite as t -> 0 (Types II/III only):
    //   b(t)/t and t b'(t)/b(t).
    double b_over_t(double t) const;
    double t_db_over_b(double t) const;
    // b'(t)/b(t) evaluated without forming b (finite inside the interval).
    double log_derivative(double t) const;

    // sin(ct) for Type II, sinh(ct) for Type III; the quantity whose 2n-th
    // power enters the beta radicand.
    double radicand_base(double t) const;

    bool is_dynamic() const { return family_ != Family::I; }

private:
    WarpingFunction(Family family, double c, int n) : family_(family), c_(c), n_(n) {}

    Family family_;
    double c_;
    int n_;
};

WarpingFunction make_warping(Family family, double c, int n);

double eval_b(const WarpingFunction& w, double t, int order);

double soliton_constant(const WarpingFunction& w);

// Max |2 b b' - n b''| over sample_count points spread across a compact
// sub-interval of the domain.
double check_warping_identity(const WarpingFunction& w, int sample_count);

// Sample points used by the identity check (also useful for tests).
double sample_point(const WarpingFunction& w, int index, int sample_count);

}  // namespace grw
