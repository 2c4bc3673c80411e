#pragma once

#include "lacuna/carleson.hpp"
#include "lacuna/combinatorics.hpp"
#include "lacuna/grid.hpp"
#include "lacuna/operators.hpp"
#include "lacuna/packets.hpp"

#include <iosfwd>
#include <string>

namespace lacuna::io {

// .f2d: u32 n, f64 period, then n*n (re, im) pairs, all little endian, row-major.
void write_field(std::ostream& out, const Field2D& f);
Field2D read_field(std::istream& in);
void save_field(const std::string& path, const Field2D& f);
Field2D load_field(const std::string& path);

void write_directions(std::ostream& out, const LacunarySet& s);
LacunarySet read_directions(std::istream& in);

// `grid_id n1 n2 m1 m2 re im`, plus a trailing `sign` for collections.
void write_coefficients(std::ostream& out, const CoefficientMap& c);
CoefficientMap read_coefficients(std::istream& in);
void write_collection(std::ostream& out, const RectCollection& s);
RectCollection read_collection(std::istream& in);

// `n1 n2 m1 m2 value`
void write_weights(std::ostream& out, const CarlesonWeight& a);
CarlesonWeight read_weights(std::istream& in);

void write_certificate(std::ostream& out, const JnCertificate& c);
JnCertificate read_certificate(std::istream& in);

}  // namespace lacuna::io
