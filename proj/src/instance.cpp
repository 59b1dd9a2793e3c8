#include "sr/instance.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace sr {

namespace {

const char* kind_label(ParseError::Kind k) {
  switch (k) {
    case ParseError::Kind::DuplicateAgent: return "duplicate agent";
    case ParseError::Kind::UnknownPartner: return "unknown partner";
    case ParseError::Kind::AsymmetricListing: return "asymmetric listing";
    case ParseError::Kind::SelfLoop: return "self loop";
    case ParseError::Kind::DuplicatePartner: return "duplicate partner";
    case ParseError::Kind::Syntax: return "syntax error";
  }
  return "parse error";
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

ParseError::ParseError(Kind k, int line_no, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + kind_label(k) +
                         (message.empty() ? "" : ": " + message)),
      kind(k),
      line(line_no) {}

NotIncidentError::NotIncidentError(VertexId v, EdgeId e)
    : std::runtime_error("edge " + std::to_string(e) + " is not incident to vertex " +
                         std::to_string(v)) {}

VertexId Instance::vertex_by_name(const std::string& name) const {
  for (int v = 0; v < num_vertices(); ++v) {
    if (names_[v] == name) return v;
  }
  return -1;
}

VertexId Instance::other_endpoint(EdgeId e, VertexId v) const {
  const auto& [a, b] = edges_[e];
  if (a == v) return b;
  if (b == v) return a;
  throw NotIncidentError(v, e);
}

EdgeId Instance::edge_between(VertexId u, VertexId v) const {
  if (u > v) std::swap(u, v);
  for (EdgeId e : incident_[u]) {
    if (edges_[e] == std::make_pair(u, v)) return e;
  }
  return -1;
}

std::string Instance::edge_name(EdgeId e) const {
  return names_[edges_[e].first] + "-" + names_[edges_[e].second];
}

int Instance::rank(VertexId v, EdgeId e) const {
  if (edges_[e].first == v) return rank_lo_[e];
  if (edges_[e].second == v) return rank_hi_[e];
  throw NotIncidentError(v, e);
}

Ordering Instance::compare(VertexId v, EdgeId e, EdgeId f) const {
  int re = rank(v, e);
  int rf = rank(v, f);
  if (re < rf) return Ordering::Better;
  if (re > rf) return Ordering::Worse;
  return Ordering::Equal;
}

std::vector<EdgeId> Instance::relation_set(VertexId v, EdgeId e, RelationMode mode) const {
  int pivot = rank(v, e);
  std::vector<EdgeId> out;
  for (EdgeId f : incident_[v]) {
    int rf = (edges_[f].first == v) ? rank_lo_[f] : rank_hi_[f];
    bool keep = false;
    switch (mode) {
      case RelationMode::StrictAbove: keep = rf < pivot; break;
      case RelationMode::Equal: keep = rf == pivot; break;
      case RelationMode::WeakAbove: keep = rf <= pivot; break;
      case RelationMode::StrictBelow: keep = rf > pivot; break;
    }
    if (keep) out.push_back(f);
  }
  return out;
}

Instance Instance::build(std::vector<std::string> names,
                         const std::vector<std::vector<std::vector<VertexId>>>& pref_groups) {
  const int n = static_cast<int>(names.size());
  if (static_cast<int>(pref_groups.size()) != n) {
    throw ParseError(ParseError::Kind::Syntax, 0, "one preference list required per agent");
  }
  for (int v = 0; v < n; ++v) {
    if (!valid_name(names[v])) {
      throw ParseError(ParseError::Kind::Syntax, 0, "invalid agent name '" + names[v] + "'");
    }
    for (int w = v + 1; w < n; ++w) {
      if (names[v] == names[w]) {
        throw ParseError(ParseError::Kind::DuplicateAgent, 0, names[v]);
      }
    }
  }

  // listed_rank[v][w] = group index of w in v's list.
  std::vector<std::unordered_map<VertexId, int>> listed_rank(n);
  for (int v = 0; v < n; ++v) {
    for (int g = 0; g < static_cast<int>(pref_groups[v].size()); ++g) {
      for (VertexId w : pref_groups[v][g]) {
        if (w < 0 || w >= n) {
          throw ParseError(ParseError::Kind::UnknownPartner, 0,
                           "partner index out of range in list of " + names[v]);
        }
        if (w == v) throw ParseError(ParseError::Kind::SelfLoop, 0, names[v]);
        if (!listed_rank[v].emplace(w, g).second) {
          throw ParseError(ParseError::Kind::DuplicatePartner, 0,
                           names[w] + " listed twice by " + names[v]);
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    for (const auto& [w, g] : listed_rank[v]) {
      if (!listed_rank[w].count(v)) {
        throw ParseError(ParseError::Kind::AsymmetricListing, 0,
                         names[v] + " lists " + names[w] + " but not vice versa");
      }
    }
  }

  Instance inst;
  inst.names_ = std::move(names);
  inst.incident_.resize(n);
  for (int u = 0; u < n; ++u) {
    std::vector<VertexId> partners;
    for (const auto& [w, g] : listed_rank[u]) {
      if (w > u) partners.push_back(w);
    }
    std::sort(partners.begin(), partners.end());
    for (VertexId w : partners) {
      EdgeId e = static_cast<EdgeId>(inst.edges_.size());
      inst.edges_.emplace_back(u, w);
      inst.rank_lo_.push_back(listed_rank[u].at(w));
      inst.rank_hi_.push_back(listed_rank[w].at(u));
      inst.incident_[u].push_back(e);
      inst.incident_[w].push_back(e);
    }
  }
  for (auto& inc : inst.incident_) std::sort(inc.begin(), inc.end());
  return inst;
}

std::string Instance::serialize() const {
  std::ostringstream out;
  out << "agents:";
  for (const auto& name : names_) out << ' ' << name;
  out << '\n';
  for (int v = 0; v < num_vertices(); ++v) {
    out << "prefs " << names_[v] << ':';
    // groups in rank order; within a group partners in vertex-id order
    std::map<int, std::vector<VertexId>> groups;
    for (EdgeId e : incident_[v]) {
      groups[rank(v, e)].push_back(other_endpoint(e, v));
    }
    for (auto& [r, members] : groups) {
      std::sort(members.begin(), members.end());
      if (members.size() == 1) {
        out << ' ' << names_[members[0]];
      } else {
        out << " (";
        for (size_t i = 0; i < members.size(); ++i) {
          out << (i ? " " : "") << names_[members[i]];
        }
        out << ')';
      }
    }
    out << '\n';
  }
  return out.str();
}

namespace {

struct Token {
  std::string text;
  bool is_punct;  // '(' or ')' or ':'
};

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
  std::vector<Token> toks;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == ':') {
      toks.push_back({std::string(1, c), true});
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) {
      ++j;
    }
    if (j == i) {
      throw ParseError(ParseError::Kind::Syntax, line_no,
                       std::string("unexpected character '") + c + "'");
    }
    toks.push_back({line.substr(i, j - i), false});
    i = j;
  }
  return toks;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  bool have_agents = false;
  int agents_line = 0;
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> index;
  // per agent: groups of partner ids, plus the prefs line number (0 = missing)
  std::vector<std::vector<std::vector<VertexId>>> groups;
  std::vector<int> prefs_line;

  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize_line(line, line_no);
    if (toks.empty()) continue;

    if (toks[0].text == "agents" && !toks[0].is_punct) {
      if (toks.size() < 2 || toks[1].text != ":") {
        throw ParseError(ParseError::Kind::Syntax, line_no, "expected ':' after 'agents'");
      }
      if (have_agents) {
        throw ParseError(ParseError::Kind::Syntax, line_no, "second 'agents' line");
      }
      have_agents = true;
      agents_line = line_no;
      for (size_t i = 2; i < toks.size(); ++i) {
        if (toks[i].is_punct) {
          throw ParseError(ParseError::Kind::Syntax, line_no,
                           "unexpected '" + toks[i].text + "' in agents line");
        }
        if (index.count(toks[i].text)) {
          throw ParseError(ParseError::Kind::DuplicateAgent, line_no, toks[i].text);
        }
        index.emplace(toks[i].text, static_cast<VertexId>(names.size()));
        names.push_back(toks[i].text);
      }
      groups.resize(names.size());
      prefs_line.assign(names.size(), 0);
      continue;
    }

    if (toks[0].text == "prefs" && !toks[0].is_punct) {
      if (!have_agents) {
        throw ParseError(ParseError::Kind::Syntax, line_no, "'prefs' before 'agents'");
      }
      if (toks.size() < 3 || toks[1].is_punct || toks[2].text != ":") {
        throw ParseError(ParseError::Kind::Syntax, line_no, "expected 'prefs <name>:'");
      }
      auto it = index.find(toks[1].text);
      if (it == index.end()) {
        throw ParseError(ParseError::Kind::Syntax, line_no,
                         "prefs for undeclared agent '" + toks[1].text + "'");
      }
      VertexId v = it->second;
      if (prefs_line[v] != 0) {
        throw ParseError(ParseError::Kind::Syntax, line_no,
                         "second prefs line for '" + toks[1].text + "'");
      }
      prefs_line[v] = line_no;

      size_t i = 3;
      while (i < toks.size()) {
        std::vector<VertexId> group;
        if (toks[i].is_punct && toks[i].text == "(") {
          ++i;
          while (i < toks.size() && !(toks[i].is_punct && toks[i].text == ")")) {
            if (toks[i].is_punct) {
              throw ParseError(ParseError::Kind::Syntax, line_no,
                               "unexpected '" + toks[i].text + "' inside tie group");
            }
            auto pit = index.find(toks[i].text);
            if (pit == index.end()) {
              throw ParseError(ParseError::Kind::UnknownPartner, line_no, toks[i].text);
            }
            group.push_back(pit->second);
            ++i;
          }
          if (i == toks.size()) {
            throw ParseError(ParseError::Kind::Syntax, line_no, "unterminated tie group");
          }
          ++i;  // skip ')'
          if (group.empty()) {
            throw ParseError(ParseError::Kind::Syntax, line_no, "empty tie group");
          }
        } else if (!toks[i].is_punct) {
          auto pit = index.find(toks[i].text);
          if (pit == index.end()) {
            throw ParseError(ParseError::Kind::UnknownPartner, line_no, toks[i].text);
          }
          group.push_back(pit->second);
          ++i;
        } else {
          throw ParseError(ParseError::Kind::Syntax, line_no,
                           "unexpected '" + toks[i].text + "'");
        }
        for (VertexId w : group) {
          if (w == v) throw ParseError(ParseError::Kind::SelfLoop, line_no, names[v]);
          for (const auto& earlier : groups[v]) {
            for (VertexId u : earlier) {
              if (u == w) {
                throw ParseError(ParseError::Kind::DuplicatePartner, line_no, names[w]);
              }
            }
          }
        }
        for (size_t a = 0; a < group.size(); ++a) {
          for (size_t b = a + 1; b < group.size(); ++b) {
            if (group[a] == group[b]) {
              throw ParseError(ParseError::Kind::DuplicatePartner, line_no, names[group[a]]);
            }
          }
        }
        groups[v].push_back(std::move(group));
      }
      continue;
    }

    throw ParseError(ParseError::Kind::Syntax, line_no,
                     "expected 'agents:' or 'prefs <name>:'");
  }

  if (!have_agents) {
    throw ParseError(ParseError::Kind::Syntax, line_no == 0 ? 1 : line_no, "missing 'agents' line");
  }
  for (size_t v = 0; v < names.size(); ++v) {
    if (prefs_line[v] == 0) {
      throw ParseError(ParseError::Kind::Syntax, agents_line,
                       "missing prefs line for '" + names[v] + "'");
    }
  }

  // mutual-listing check with line attribution to the one-sided lister
  std::vector<std::unordered_map<VertexId, bool>> lists(names.size());
  for (size_t v = 0; v < names.size(); ++v) {
    for (const auto& group : groups[v]) {
      for (VertexId w : group) lists[v][w] = true;
    }
  }
  for (size_t v = 0; v < names.size(); ++v) {
    for (const auto& [w, unused] : lists[v]) {
      if (!lists[w].count(static_cast<VertexId>(v))) {
        throw ParseError(ParseError::Kind::AsymmetricListing, prefs_line[v],
                         names[v] + " lists " + names[w] + " but " + names[w] +
                             " does not list " + names[v]);
      }
    }
  }

  return Instance::build(std::move(names), groups);
}

}  // namespace sr
