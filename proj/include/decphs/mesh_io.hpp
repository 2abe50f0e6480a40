#pragma once

#include <iosfwd>
#include <string>

#include "decphs/complex.hpp"

namespace decphs {

// Mesh files are JSON: {"dim": n, "vertices": [[x, ...], ...], "simplices": [[i0, ..., in], ...]}.
SimplicialComplex read_mesh(std::istream& in);
SimplicialComplex read_mesh_file(const std::string& path);
void write_mesh(const SimplicialComplex& K, std::ostream& out);

// Meshes used throughout the tests and scenarios.
SimplicialComplex pentagon_mesh();
SimplicialComplex two_tet_mesh();
SimplicialComplex ring_mesh();

}  // namespace decphs
