#pragma once

#include <map>
#include <string>
#include <vector>

#include "hopfinv/errors.hpp"
#include "hopfinv/hopfcore.hpp"

namespace hopfinv {

enum class Side { Upper, Lower };

struct Circle {
    int theta2 = 1;               // twice the tilt index at the base point
    std::vector<int> crossings;   // cyclic order starting just after the base point
    bool operator==(const Circle&) const = default;
};

struct CrossingData {
    int s = 0;    // antipode exponent
    int t = 0;    // tilt exponent, only read for framed diagrams
    int eps = 1;  // intersection sign
    bool operator==(const CrossingData&) const = default;
};

struct Diagram {
    std::string name;
    int genus = 0;
    bool framed = false;
    std::vector<Circle> upper, lower;
    std::map<int, CrossingData> crossings;

    const std::vector<Circle>& circles(Side side) const { return side == Side::Upper ? upper : lower; }
    std::vector<Circle>& circles(Side side) { return side == Side::Upper ? upper : lower; }
    int crossing_count() const { return static_cast<int>(crossings.size()); }
    // structural equality, the name is ignored
    bool operator==(const Diagram& o) const;
};

struct Location {
    int circle = -1;
    int position = -1;
};
Location locate(const Diagram& d, Side side, int id);

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    std::string to_string() const;
};
ValidationReport validate_diagram(const Diagram& d);

std::string diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const std::string& text);  // ParseError, InvalidDiagram
Diagram load_diagram(const std::string& path);
void save_diagram(const Diagram& d, const std::string& path);

// rows: lower circles, columns: upper circles
std::vector<std::vector<long>> intersection_matrix(const Diagram& d);
long integer_determinant(const std::vector<std::vector<long>>& m);
int canonical_sign(const Diagram& d);

// Every constant the diagram calculus and the evaluation leave open.
struct ConventionRecord {
    HopfConventions hopf;
    int theta_parity = 1;        // parity of every theta2
    int s_parity = 0;            // parity of s on a positive crossing
    int spiral_direction = 1;    // s shift per unit spiral is 2 * this
    int reversal_sign = 1;       // lower: s -= r theta2, upper: s += r theta2
    // order of odd integral nodes before the canonical sign is applied:
    // lower_first | upper_first | lower_upper_pairs | upper_lower_pairs
    std::string sign_normalization = "upper_lower_pairs";

    static const std::vector<std::string>& layouts();
    bool operator==(const ConventionRecord&) const = default;
    std::string to_json() const;
    static ConventionRecord from_json(const std::string& text);
    static ConventionRecord load(const std::string& path);
};

struct Move {
    enum class Kind { Reverse, Isotopy, Spiral, Slide, Stabilize, Destabilize };
    Kind kind = Kind::Stabilize;
    Side side = Side::Upper;
    int circle = 0;
    int over = 0;    // slide: circle slid over; destabilize: lower circle
    int gap = 0;     // slide: insertion gap in the moving circle
    int band = 1;    // slide: which side of the crossings the copies go, 1 or 2
    bool rev = false;
    int dir = 1;     // isotopy and spiral direction

    std::string to_string() const;
    static Move parse(const std::string& spec);  // ParseError
};

// Throws MoveNotApplicable.
Diagram apply_move(const Diagram& d, const Move& m, const ConventionRecord& rec);
std::vector<Move> applicable_moves(const Diagram& d);

std::vector<std::string> builtin_names();
// "A#B#C" builds connected sums of builtins. Throws UnknownName.
Diagram builtin_diagram(const std::string& name, const ConventionRecord& rec);
Diagram connected_sum(const Diagram& a, const Diagram& b);

}  // namespace hopfinv
