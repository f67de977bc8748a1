#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

/// rows x cols lattice with horizontal and vertical unit edges. Vertex
/// r * cols + c sits at (c, r) / max(rows - 1, cols - 1, 1).
Graph square_grid(std::size_t rows, std::size_t cols);

/// Square grid plus every (x, y) -- (x + 1, y + 1) diagonal. Needs rows, cols >= 2.
Graph triangular_grid(std::size_t rows, std::size_t cols);

/// Square grid where each unit cell independently gains one diagonal with
/// probability p, its direction chosen by a fair coin.
Graph perturbed_grid(std::size_t rows, std::size_t cols, double p, std::uint64_t seed);

namespace source {
/// rows == cols == 0 means "square side derived from n" (floor(sqrt(n))).
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
};
struct TriangularGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
};
struct PerturbedGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double diag_prob = 0.7;
};
/// n uniform points, no edges. Vertex count comes from build_model's n.
struct PointCloud {};
}  // namespace source

using Source =
    std::variant<source::Grid, source::TriangularGrid, source::PerturbedGrid, source::PointCloud>;

namespace stage {
struct Delaunay {};
/// Add the floor(factor * n) shortest absent vertex pairs.
struct AddShortest {
  double factor = 1.0;
};
/// Remove the floor(factor * n) longest present edges.
struct RemoveLongest {
  double factor = 1.0;
};
struct RemoveRandom {
  double prob = 0.0;
};
/// Add each absent pair independently with probability prob.
struct AddRandom {
  double prob = 0.0;
};
/// Add each absent pair with probability base^(-distance). An absent base is
/// tuned per instance so the expected average degree is target_degree.
struct AddDistanceProb {
  std::optional<double> base;
  double target_degree = 5.4;
};
/// floor(scale * n) insertions with endpoints drawn proportional to degree.
struct AddPreferential {
  double scale = 0.0;
};
}  // namespace stage

using Stage = std::variant<stage::Delaunay, stage::AddShortest, stage::RemoveLongest,
                           stage::RemoveRandom, stage::AddRandom, stage::AddDistanceProb,
                           stage::AddPreferential>;

enum class Postprocess { none, largest_component };

/// Declarative generator: a source, an ordered list of perturbation stages,
/// and a final postprocess.
///
/// Textual form: `name:source(args)|stage(args)|...|post`, for example
/// `11c:point_cloud|add_shortest(7)|remove_random(0.6)|largest_component`.
/// Source names: grid, triangular_grid, perturbed_grid, point_cloud. Stage
/// names: delaunay, add_shortest, remove_longest, remove_random, add_random,
/// add_distance_prob (no argument or `auto` tunes the base; `auto:<degree>`
/// sets the tuning target), add_preferential. Post: none, largest_component.
/// Grid arguments are `rows,cols` (and `,p` for perturbed_grid); omitting
/// them derives a square side from n.
struct ModelSpec {
  std::string name;
  Source source = source::PointCloud{};
  std::vector<Stage> stages;
  Postprocess postprocess = Postprocess::none;

  /// Throws InputError on out-of-range parameters.
  void validate() const;
};

std::string to_string(const ModelSpec& spec);

/// Parses the textual form. A missing name defaults to "custom".
ModelSpec parse_model_spec(const std::string& text);

/// The eighteen named presets (1, 2, 3, 4, 4b, 5, 5b, 6, 7, 8, 9, 9b, 10, 10b,
/// 11, 11b, 11c, 12).
const std::vector<ModelSpec>& model_catalog();

/// Preset by name; nullopt when unknown.
std::optional<ModelSpec> find_preset(const std::string& name);

/// A preset name or a full textual spec.
ModelSpec resolve_model(const std::string& preset_or_spec);

/// Runs the pipeline. Vertex ids are 0..n-1 (before any postprocess).
/// Deterministic per (spec, n, seed).
Graph build_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed);

/// Runs stages on an existing graph, keeping its ids. Throws InputError when
/// a geometric stage meets a graph without coordinates.
Graph apply_stages(const Graph& g, const std::vector<Stage>& stages, std::uint64_t seed);

/// Expected average degree when each pair is joined with probability
/// base^(-distance): (2 / n) * sum over pairs.
double expected_average_degree(const std::vector<Point>& points, double base);

/// Bisection on the distance-probability base so that the expected average
/// degree of the seeded n-point cloud is within 0.05 of the target. Throws
/// InputError when the target is outside (0, n - 1) and NumericalError when
/// no bracket exists.
double tune_model1_base(std::size_t n, double target_avg_degree, std::uint64_t seed);

/// Same, on explicit points.
double tune_distance_base(const std::vector<Point>& points, double target_avg_degree);

}  // namespace dualgraph
