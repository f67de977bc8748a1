#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

enum class GraphFormat { node_link, edge_list };

std::string to_string(GraphFormat f);
/// Accepts "node-link" / "json" and "edge-list" / "edges".
GraphFormat parse_graph_format(const std::string& text);
/// ".json" means node-link, anything else edge-list.
GraphFormat guess_graph_format(const std::filesystem::path& path);

/// Node-link JSON: {"directed": false, "nodes": [{"id", "x"?, "y"?}],
/// "links": [{"source", "target"}]}. Unknown keys are ignored, so networkx
/// exports load as they are. Integer ids stay integers.
///
/// Edge list: one record per line, '#' starts a comment. Two tokens are an
/// edge; one token declares an isolated vertex. Tokens that parse as integers
/// become integer ids. Edge lists carry no coordinates.
///
/// Duplicate links collapse; self-links, dangling endpoints, directed
/// documents, and malformed records throw InputError with the path and the
/// offending line or field.
Graph load_graph(const std::filesystem::path& path, GraphFormat format);
Graph parse_node_link(const std::string& text, const std::string& source_name = "<string>");
Graph parse_edge_list(const std::string& text, const std::string& source_name = "<string>");

/// Deterministic writers. Node-link round-trips ids, edges, and coordinates;
/// edge lists round-trip ids and edges and drop coordinates.
void save_graph(const Graph& g, const std::filesystem::path& path, GraphFormat format);
std::string format_node_link(const Graph& g);
std::string format_edge_list(const Graph& g);

/// One CSV cell. Absent values are written as empty fields.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

/// Named cells in column order.
using ResultRow = std::vector<std::pair<std::string, Cell>>;

/// Shortest text that reads back as the same double.
std::string format_real(double v);
std::string format_cell(const Cell& c);

/// Header line plus one line per row, RFC 4180 quoting, '\n' terminated.
/// Throws InputError naming the row index when a row's column names differ
/// from `columns`.
std::string format_rows(const std::vector<std::string>& columns, const std::vector<ResultRow>& rows);
void write_rows(const std::vector<std::string>& columns, const std::vector<ResultRow>& rows,
                const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; InputError when missing.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source_name = "<string>");
CsvTable read_csv(const std::filesystem::path& path);

/// Whole-file helpers; failures name the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dualgraph
