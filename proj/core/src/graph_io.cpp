#include <cctype>
#include <map>
#include <sstream>

#include "grope/graph.hpp"

namespace grope {

namespace {

struct Token {
  std::string text;
  std::size_t offset;
};

std::vector<Token> split_tokens(std::string_view line, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    if (line[i] == ':') {
      ++i;
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ':') ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), base + start});
  }
  return out;
}

}  // namespace

UnitrivalentGraph parse_graph(std::string_view text) {
  std::vector<std::string> vnames;
  std::map<std::string, int> vindex;
  std::vector<std::vector<std::string>> vedges;
  std::vector<std::size_t> voffsets;
  std::optional<std::pair<std::string, std::size_t>> root_name;
  bool header = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    const std::size_t base = pos;
    pos = end + 1;
    auto toks = split_tokens(line, base);
    if (toks.empty() || toks[0].text[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!header) {
      if (toks[0].text != "graph" || toks.size() != 1)
        throw ParseError("graph file must start with 'graph'", toks[0].offset);
      header = true;
    } else if (toks[0].text == "root") {
      if (toks.size() != 2) throw ParseError("expected 'root <id>'", toks[0].offset);
      if (root_name) throw ParseError("root given twice", toks[0].offset);
      root_name = {toks[1].text, toks[1].offset};
    } else if (toks[0].text == "t" || toks[0].text == "u") {
      const std::size_t want = toks[0].text == "t" ? 3 : 1;
      if (toks.size() != 3 + want || toks[2].text != ":")
        throw ParseError("expected '" + toks[0].text + " <id>: " + (want == 3 ? "<e> <e> <e>'" : "<e>'"),
                         toks[0].offset);
      const std::string& name = toks[1].text;
      if (vindex.count(name)) throw ParseError("duplicate vertex '" + name + "'", toks[1].offset);
      vindex[name] = static_cast<int>(vnames.size());
      vnames.push_back(name);
      voffsets.push_back(toks[0].offset);
      std::vector<std::string> es;
      for (std::size_t i = 3; i < toks.size(); ++i) es.push_back(toks[i].text);
      vedges.push_back(std::move(es));
    } else {
      throw ParseError("unknown line kind '" + toks[0].text + "'", toks[0].offset);
    }
    if (end == text.size()) break;
  }
  if (!header) throw ParseError("missing 'graph' header", 0);
  if (vnames.empty()) throw ParseError("graph has no vertices", text.size());

  std::map<std::string, int> eindex;
  std::vector<std::string> enames;
  std::vector<int> ecount;
  std::vector<std::vector<int>> inc(vnames.size());
  for (std::size_t v = 0; v < vnames.size(); ++v)
    for (const auto& en : vedges[v]) {
      auto [it, fresh] = eindex.emplace(en, static_cast<int>(enames.size()));
      if (fresh) {
        enames.push_back(en);
        ecount.push_back(0);
      }
      if (++ecount[it->second] > 2)
        throw ParseError("edge '" + en + "' appears more than twice", voffsets[v]);
      inc[v].push_back(it->second);
    }
  for (std::size_t e = 0; e < enames.size(); ++e)
    if (ecount[e] != 2) throw ParseError("edge '" + enames[e] + "' appears only once", text.size());

  std::optional<int> root;
  if (root_name) {
    auto it = vindex.find(root_name->first);
    if (it == vindex.end()) throw ParseError("unknown root vertex '" + root_name->first + "'", root_name->second);
    root = it->second;
  }
  try {
    UnitrivalentGraph g(inc, static_cast<int>(enames.size()), root);
    g.set_names(std::move(vnames), std::move(enames));
    return g;
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string format_graph(const UnitrivalentGraph& g) {
  std::ostringstream out;
  out << "graph\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    out << (g.is_trivalent(v) ? "t " : "u ") << g.vertex_name(v) << ":";
    for (int h : g.half_edges(v)) out << ' ' << g.edge_name(UnitrivalentGraph::edge_of(h));
    out << '\n';
  }
  if (g.root()) out << "root " << g.vertex_name(*g.root()) << '\n';
  return out.str();
}

}  // namespace grope
