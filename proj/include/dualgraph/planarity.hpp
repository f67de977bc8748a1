#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

/// Cyclic neighbor order around every vertex (same orientation everywhere).
using RotationSystem = std::vector<std::vector<std::uint32_t>>;

struct PlanarityVerdict {
  bool planar = false;
  /// Present when planar and a witness was requested.
  std::optional<RotationSystem> embedding;
  /// Present when non-planar and a witness was requested: the edges of a
  /// subdivision of K5 or K3,3.
  std::optional<std::vector<Edge>> kuratowski;
};

/// Boyer-Myrvold edge-addition test. Disconnected inputs are planar iff every
/// component is; isolated vertices never matter. With want_witness == false
/// the |E| > 3|V| - 6 bound (over non-isolated vertices) rejects without
/// running the full test and no witness is attached.
PlanarityVerdict is_planar(const Graph& g, bool want_witness = true);

/// Number of faces traced from the rotation system, summed over components.
/// Throws InputError when a rotation is not a permutation of the neighbors.
std::size_t count_faces(const Graph& g, const RotationSystem& rotation);

/// Euler check V - E + F = 1 + C over non-isolated vertices, with the outer
/// faces of the C components counted once.
bool verify_embedding(const Graph& g, const RotationSystem& rotation);

/// True iff `edges` is a subset of g's edges forming a subdivision of K5 or
/// K3,3 (and nothing else).
bool is_kuratowski_subdivision(const Graph& g, const std::vector<Edge>& edges);

}  // namespace dualgraph
