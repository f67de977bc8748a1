#include "dualgraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dualgraph/error.hpp"

namespace dualgraph {

using json = nlohmann::ordered_json;

std::string to_string(GraphFormat f) {
  return f == GraphFormat::node_link ? "node-link" : "edge-list";
}

GraphFormat parse_graph_format(const std::string& text) {
  if (text == "node-link" || text == "json") return GraphFormat::node_link;
  if (text == "edge-list" || text == "edges") return GraphFormat::edge_list;
  throw InputError("unknown graph format '" + text + "' (expected node-link or edge-list)");
}

GraphFormat guess_graph_format(const std::filesystem::path& path) {
  return path.extension() == ".json" ? GraphFormat::node_link : GraphFormat::edge_list;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("cannot read " + path.string());
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw InputError("cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// Node-link

namespace {

VertexId json_id(const json& value, const std::string& where) {
  if (value.is_number_integer()) return VertexId(value.get<std::int64_t>());
  if (value.is_string()) return VertexId(value.get<std::string>());
  throw InputError(where + ": expected an integer or string id");
}

json id_json(const VertexId& id) {
  if (id.is_int()) return json(id.as_int());
  return json(id.as_string());
}

}  // namespace

Graph parse_node_link(const std::string& text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source_name + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(source_name + ": top level must be an object");
  if (doc.contains("directed")) {
    const json& d = doc["directed"];
    if (!d.is_boolean()) throw InputError(source_name + ": field 'directed' must be a boolean");
    if (d.get<bool>()) throw InputError(source_name + ": directed graphs are not supported");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw InputError(source_name + ": missing array field 'nodes'");
  }
  const json& nodes = doc["nodes"];
  // networkx writes "edges" in newer releases; accept either.
  const char* link_key = doc.contains("links") ? "links" : (doc.contains("edges") ? "edges" : nullptr);
  std::vector<VertexId> ids;
  std::vector<Point> coords;
  ids.reserve(nodes.size());
  std::size_t with_coords = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = source_name + ": nodes[" + std::to_string(i) + "]";
    const json& node = nodes[i];
    if (!node.is_object() || !node.contains("id")) throw InputError(where + ": missing field 'id'");
    ids.push_back(json_id(node["id"], where + ".id"));
    const bool hx = node.contains("x");
    const bool hy = node.contains("y");
    if (hx != hy) throw InputError(where + ": 'x' and 'y' must appear together");
    if (hx) {
      if (!node["x"].is_number() || !node["y"].is_number()) {
        throw InputError(where + ": coordinates must be numbers");
      }
      coords.push_back({node["x"].get<double>(), node["y"].get<double>()});
      ++with_coords;
    }
  }
  if (with_coords != 0 && with_coords != ids.size()) {
    throw InputError(source_name + ": coordinates must be given for all nodes or none");
  }

  std::vector<std::pair<VertexId, VertexId>> edges;
  if (link_key != nullptr) {
    const json& links = doc[link_key];
    if (!links.is_array()) throw InputError(source_name + ": field '" + link_key + "' must be an array");
    edges.reserve(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string where = source_name + ": " + link_key + "[" + std::to_string(i) + "]";
      const json& link = links[i];
      if (!link.is_object() || !link.contains("source") || !link.contains("target")) {
        throw InputError(where + ": needs 'source' and 'target'");
      }
      edges.emplace_back(json_id(link["source"], where + ".source"),
                         json_id(link["target"], where + ".target"));
    }
  }
  std::optional<std::vector<Point>> maybe_coords;
  if (with_coords != 0) maybe_coords = std::move(coords);
  try {
    return Graph::from_ids(std::move(ids), edges, std::move(maybe_coords));
  } catch (const InputError& e) {
    throw InputError(source_name + ": " + e.what());
  }
}

std::string format_node_link(const Graph& g) {
  json doc;
  doc["directed"] = false;
  doc["multigraph"] = false;
  doc["graph"] = json::object();
  json nodes = json::array();
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    json node;
    node["id"] = id_json(g.id(v));
    if (g.has_coords()) {
      node["x"] = g.coords()[v].x;
      node["y"] = g.coords()[v].y;
    }
    nodes.push_back(std::move(node));
  }
  json links = json::array();
  for (const Edge& e : g.edges()) {
    json link;
    link["source"] = id_json(g.id(e.u));
    link["target"] = id_json(g.id(e.v));
    links.push_back(std::move(link));
  }
  doc["nodes"] = std::move(nodes);
  doc["links"] = std::move(links);
  return doc.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// Edge list

namespace {

VertexId token_id(const std::string& token) {
  std::int64_t v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec == std::errc() && res.ptr == token.data() + token.size()) return VertexId(v);
  return VertexId(token);
}

std::string id_token(const VertexId& id) {
  if (id.is_int()) return std::to_string(id.as_int());
  const std::string& s = id.as_string();
  const bool bad = s.empty() || s.find('#') != std::string::npos ||
                   std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  if (bad) throw InputError("id '" + s + "' cannot be written to an edge list");
  // A string that looks like an integer would come back as an integer id.
  if (token_id(s).is_int()) throw InputError("id '" + s + "' cannot be written to an edge list");
  return s;
}

}  // namespace

Graph parse_edge_list(const std::string& text, const std::string& source_name) {
  std::vector<VertexId> ids;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() > 2) {
      throw InputError(source_name + ":" + std::to_string(line_no) + ": expected 'u v' or 'id', got " +
                       std::to_string(tokens.size()) + " fields");
    }
    ids.push_back(token_id(tokens[0]));
    if (tokens.size() == 2) {
      ids.push_back(token_id(tokens[1]));
      edges.emplace_back(ids[ids.size() - 2], ids.back());
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  try {
    return Graph::from_ids(std::move(ids), edges);
  } catch (const InputError& e) {
    throw InputError(source_name + ": " + e.what());
  }
}

std::string format_edge_list(const Graph& g) {
  std::string out;
  std::vector<char> touched(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) touched[e.u] = touched[e.v] = 1;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (!touched[v]) out += id_token(g.id(v)) + "\n";
  }
  for (const Edge& e : g.edges()) out += id_token(g.id(e.u)) + " " + id_token(g.id(e.v)) + "\n";
  return out;
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  const std::string text = read_text_file(path);
  return format == GraphFormat::node_link ? parse_node_link(text, path.string())
                                          : parse_edge_list(text, path.string());
}

void save_graph(const Graph& g, const std::filesystem::path& path, GraphFormat format) {
  write_text_file(path, format == GraphFormat::node_link ? format_node_link(g) : format_edge_list(g));
}

// ---------------------------------------------------------------------------
// CSV

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        if constexpr (std::is_same_v<T, double>) return format_real(v);
        if constexpr (std::is_same_v<T, std::string>) return v;
        if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
      },
      c);
}

std::string format_rows(const std::vector<std::string>& columns, const std::vector<ResultRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += quote_field(columns[i]);
  }
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const ResultRow& row = rows[r];
    bool same = row.size() == columns.size();
    for (std::size_t i = 0; same && i < row.size(); ++i) same = row[i].first == columns[i];
    if (!same) throw InputError("row " + std::to_string(r) + " does not match the CSV schema");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += quote_field(format_cell(row[i].second));
    }
    out += '\n';
  }
  return out;
}

void write_rows(const std::vector<std::string>& columns, const std::vector<ResultRow>& rows,
                const std::filesystem::path& path) {
  write_text_file(path, format_rows(columns, rows));
}

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InputError("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(const std::string& text, const std::string& source_name) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw InputError(source_name + ":" + std::to_string(line) + ": stray quote");
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (field_started || !field.empty() || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      field_started = false;
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw InputError(source_name + ": unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw InputError(source_name + ": empty CSV");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw InputError(source_name + ": record " + std::to_string(r) + " has " +
                       std::to_string(records[r].size()) + " fields, header has " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_text_file(path), path.string());
}

}  // namespace dualgraph
