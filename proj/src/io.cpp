#include "graphon_ldp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "graphon_ldp/errors.hpp"

namespace gldp {

namespace {

Rational width_from_json(const nlohmann::json& w, std::size_t index) {
  const std::string field = "gamma[" + std::to_string(index) + "]";
  try {
    if (w.is_array()) {
      if (w.size() != 2) throw ValidationError("expected a [numerator, denominator] pair");
      auto part = [](const nlohmann::json& x) {
        if (x.is_string()) return x.get<std::string>();
        if (x.is_number_integer()) return std::to_string(x.get<long long>());
        throw ValidationError("numerator/denominator must be strings or integers");
      };
      return make_rational(part(w[0]), part(w[1]));
    }
    if (w.is_string()) return parse_rational(w.get<std::string>());
    if (w.is_number_integer()) return Rational(w.get<long long>());
    throw ValidationError("unsupported width encoding");
  } catch (const ValidationError& e) {
    throw ValidationError(field + ": " + e.what());
  }
}

}  // namespace

StepGraphon graphon_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("graphon document must be a JSON object");
  if (!doc.contains("gamma") || !doc["gamma"].is_array())
    throw ValidationError("field 'gamma' missing or not an array");
  if (!doc.contains("values") || !doc["values"].is_array())
    throw ValidationError("field 'values' missing or not an array");
  std::vector<Rational> widths;
  for (std::size_t i = 0; i < doc["gamma"].size(); ++i)
    widths.push_back(width_from_json(doc["gamma"][i], i));
  std::vector<std::vector<double>> values;
  const auto& rows = doc["values"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array())
      throw ValidationError("values[" + std::to_string(i) + "] is not an array");
    std::vector<double> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (!rows[i][j].is_number())
        throw ValidationError("values[" + std::to_string(i) + "][" + std::to_string(j) +
                              "] is not a number");
      row.push_back(rows[i][j].get<double>());
    }
    values.push_back(std::move(row));
  }
  return StepGraphon(std::move(widths), std::move(values));
}

nlohmann::json graphon_to_json(const StepGraphon& f) {
  nlohmann::json gamma = nlohmann::json::array();
  for (const auto& w : f.widths())
    gamma.push_back(nlohmann::json::array({numerator_string(w), denominator_string(w)}));
  return {{"gamma", gamma}, {"values", f.values()}};
}

StepGraphon parse_graphon(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed graphon JSON: ") + e.what());
  }
  return graphon_from_json(doc);
}

StepGraphon load_graphon(const std::string& path) { return parse_graphon(read_file(path)); }

void save_graphon(const StepGraphon& f, const std::string& path) {
  write_file(path, graphon_to_json(f).dump(2) + "\n");
}

FiniteGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto parse_ints = [&](const std::string& s, int& x, int& y) {
    std::istringstream ls(s);
    std::string extra;
    if (!(ls >> x >> y) || (ls >> extra))
      throw ValidationError("line " + std::to_string(line_no) + ": expected two integers");
  };
  if (!next_line(line)) throw ValidationError("graph file is empty");
  int v = 0, e = 0;
  parse_ints(line, v, e);
  if (v < 1 || e < 0)
    throw ValidationError("line " + std::to_string(line_no) + ": invalid vertex/edge counts");
  std::vector<Edge> edges;
  for (int k = 0; k < e; ++k) {
    if (!next_line(line))
      throw ValidationError("expected " + std::to_string(e) + " edges, found " + std::to_string(k));
    int a = 0, b = 0;
    parse_ints(line, a, b);
    if (a < 1 || a > v || b < 1 || b > v)
      throw ValidationError("line " + std::to_string(line_no) + ": endpoint out of range");
    if (a == b) throw ValidationError("line " + std::to_string(line_no) + ": loop");
    for (const auto& prev : edges)
      if ((prev.a == a - 1 && prev.b == b - 1) || (prev.a == b - 1 && prev.b == a - 1))
        throw ValidationError("line " + std::to_string(line_no) + ": duplicate edge");
    edges.push_back({a - 1, b - 1});
  }
  if (next_line(line))
    throw ValidationError("line " + std::to_string(line_no) + ": more edges than declared");
  return FiniteGraph(v, std::move(edges));
}

FiniteGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

std::string graph_to_text(const FiniteGraph& graph) {
  std::ostringstream out;
  out << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
  for (const auto& e : graph.edges()) out << e.a + 1 << ' ' << e.b + 1 << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace gldp
