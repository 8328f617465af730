#pragma once

#include <string>
#include <vector>

#include "pappus/projective.hpp"

namespace pappus {

// Vertices p,q (top) and r,s (bottom); t marks the top edge, b the bottom.
template <class T>
struct MarkedBox {
  Point<T> p, q, r, s, t, b;
};
using ZBox = MarkedBox<Z>;
using RBox = MarkedBox<double>;

template <class T>
struct PappusTriple {
  Point<T> u, m, v;
  Line<T> axis;
};

enum class BoxOp { I, Tau1, Tau2 };
char letter(BoxOp op);
BoxOp box_op(char letter);  // BadLetter

ZBox default_seed();    // t=(1/4,1), b=(-1/3,-1)
ZBox symmetric_seed();  // t=(0,1), b=(0,-1)

// Every violated invariant, in a fixed order; empty means valid. With
// in_chart the quadrilateral must also be convex in the chart z = 1.
std::vector<std::string> validate(const ZBox& box, bool in_chart = false);
std::vector<std::string> validate(const RBox& box, bool in_chart = false);

template <class T>
PappusTriple<T> pappus_triple(const MarkedBox<T>& box);
template <class T>
MarkedBox<T> apply_box_op(BoxOp op, const MarkedBox<T>& box);
// Applies the letters of a word, rightmost first.
template <class T>
MarkedBox<T> apply_word(const std::string& word, const MarkedBox<T>& box);

// Max pairwise distance over the six points.
double diameter(const ZBox& box);
double diameter(const RBox& box);
// Max pairwise distance over t, v, b, u: the region holding every deeper
// mark below this box.
double mark_diamond(const ZBox& box);
double mark_diamond(const RBox& box);

// Equality up to the relabeling (p,q,r,s;t,b) ~ (q,p,s,r;t,b).
bool same_class(const ZBox& a, const ZBox& b);
bool same_class(const RBox& a, const RBox& b);

ZBox transform(const ZMap& m, const ZBox& box);
RBox transform(const RMap& m, const RBox& box);
RBox to_float(const ZBox& box);

// Closed convex quadrilateral p,q,r,s, by sign conditions on determinants.
bool in_closed_quad(const ZPoint& x, const ZBox& box);

template <class T>
struct OrbitNode {
  std::string word;
  MarkedBox<T> box;
  double diameter = 0.0;
};

// All reduced words over the alphabet (letters from "12i") up to the given
// length, ordered by length then by byte order; the box of c+w is op_c of
// the box of w.
template <class T>
std::vector<OrbitNode<T>> orbit(const MarkedBox<T>& seed, int depth, const std::string& alphabet);

// One orbit dump line: word, six points, diameter.
std::string orbit_line(const OrbitNode<Z>& node);
std::string orbit_line(const OrbitNode<double>& node);

}  // namespace pappus
