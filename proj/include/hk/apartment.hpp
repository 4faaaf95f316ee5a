// Euclidean combinatorics of the standard apartment: a generic base point,
// the quantities eps(z, Q), w_z, Q(eps), the blocks P(eps) and the graded
// support bijection.  Coordinates are exact rationals in the nabla basis and
// every length is a squared length.
#pragma once

#include "hk/rootdata.hpp"

#include <gmpxx.h>
#include <map>
#include <string>
#include <vector>

namespace hk {

using QVec = std::vector<mpq_class>;
using NablaSet = unsigned;  // bit k = lambda_{k+1}

class ApartmentModel {
public:
    ApartmentModel(char series, int rank);

    const RootSystem& roots() const { return rs_; }
    int rank() const { return rs_.rank(); }
    // Gram matrix of nabla, short coroots of squared length 2.
    const std::vector<QVec>& gram() const { return gram_; }
    mpq_class norm2(const QVec& v) const;
    mpq_class dist2(const QVec& a, const QVec& b) const;

    QVec act(std::size_t w, const QVec& x) const;
    IntVec act(std::size_t w, const IntVec& x) const;
    mpq_class pair(const IntVec& root, const QVec& x) const;  // <alpha, x>
    const IntVec& highest_root() const { return highest_; }

    bool in_closed_cone(const QVec& x) const;  // C-bar
    bool in_open_anticone(const QVec& x) const;  // -C
    bool in_base_alcove(const QVec& x) const;  // sigma_0
    bool on_wall(const QVec& x) const;

    // Sum of lambda over Q, as an integer vector.
    IntVec lambda_sum(NablaSet q) const;
    // max over Q and (w_lambda) of ||sum w_lambda lambda||^2.
    mpq_class max_shift_norm2() const;
    // Lattice points with ||z - center||^2 <= r2.
    std::vector<IntVec> lattice_ball(const QVec& center, const mpq_class& r2) const;

private:
    RootSystem rs_;
    std::vector<QVec> gram_;
    IntVec highest_;
};

QVec to_q(const IntVec& v);

struct Basepoint {
    QVec z0;
    long denominator = 0;
    std::size_t candidates_tried = 0;
    std::size_t vertices_checked = 0;
};

// Pairwise distinct squared distances from z0 over lattice points within radius.
bool distances_distinct(const ApartmentModel& m, const QVec& z0, const mpq_class& radius);
// Rational points of sigma_0 by increasing denominator; throws StructuralError
// when max_denominator is exhausted.
Basepoint generic_basepoint(const ApartmentModel& m, const mpq_class& window_radius, long max_denominator = 64);
// Lattice radius used around a window: R plus the largest shift.
mpq_class guarded_radius(const ApartmentModel& m, const mpq_class& window_radius);

// ||z - sum w_lambda lambda||^2 is maximal exactly where sum w_lambda lambda = sum lambda.
bool verify_extremal_sum(const ApartmentModel& m, const QVec& z, NablaSet q);

// Unique w with z in z0 - w C-bar.
std::size_t chamber_index(const ApartmentModel& m, const QVec& z0, const IntVec& z);

struct EpsilonValue {
    mpq_class eps2;  // squared
    IntVec argmax;   // the maximizing x
    bool maximizers_as_predicted = false;  // every maximizing tuple has w_lambda lambda = w_z lambda
};
EpsilonValue epsilon_of(const ApartmentModel& m, const QVec& z0, const IntVec& z, NablaSet q);

struct Block {
    IntVec z_eps;
    mpq_class eps2;
    std::size_t w = 0;
    NablaSet q_eps = 0;
    std::vector<std::pair<IntVec, NablaSet>> members;  // indexed by Q subset of Q(eps), increasing mask
};
Block block_of(const ApartmentModel& m, const QVec& z0, const IntVec& z_eps);

struct PartitionReport {
    mpq_class radius;
    std::size_t window_pairs = 0;
    std::size_t blocks = 0;
    std::size_t value_mismatches = 0;    // eps(z, Q) != eps on a block member
    std::size_t cover_violations = 0;    // window pair in zero or several blocks
    std::size_t margin_violations = 0;   // maximizer outside the guarded lattice ball
    std::size_t maximizer_violations = 0;
    std::size_t monotonicity_violations = 0;
    std::size_t chamber_violations = 0;
    std::map<std::size_t, std::size_t> block_sizes;  // size -> count
    bool passed() const;
};
PartitionReport partition_check(const ApartmentModel& m, const QVec& z0, const mpq_class& radius);

struct BijectionRow {
    IntVec z;
    NablaSet q = 0;
    IntVec image;  // w^-1 (z - y_eps), expected -lambda_{D - Q}
};

struct BijectionReport {
    Block block;
    std::vector<BijectionRow> rows;
    bool well_defined = false;
    bool bijective = false;
    bool wall_separation = false;
    std::size_t wall_checks = 0;
};
BijectionReport graded_support_bijection(const ApartmentModel& m, const QVec& z0, const IntVec& z_eps);

// Plain SVG of a rank-2 window: walls, sigma_0, z0 and one highlighted block.
std::string window_svg(const ApartmentModel& m, const QVec& z0, const mpq_class& radius, const Block& highlight);

}  // namespace hk
