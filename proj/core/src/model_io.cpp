#include "fok/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fok/errors.hpp"

namespace fok {

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Identifiers, plus '.' so unraveled node names like w1.w2 survive a round trip.
bool is_name_token(const std::string& w) {
  return std::all_of(w.begin(), w.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '.' || c == '\'';
  });
}

}  // namespace

ModelDocument parse_model_document(std::string_view text) {
  ModelDocument doc;
  KripkeModel::Builder b;
  std::size_t offset = 0;
  std::size_t line_no = 0;

  std::vector<std::string> declared_worlds;
  auto require_world = [&](const std::string& name) {
    if (std::find(declared_worlds.begin(), declared_worlds.end(), name) == declared_worlds.end()) {
      throw InvalidModelError("line " + std::to_string(line_no) + ": undeclared world '" + name +
                              "'");
    }
    return b.world(name);
  };

  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    const std::size_t line_start = offset;
    offset = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words[0];
    auto need = [&](std::size_t min_args) {
      if (words.size() - 1 < min_args) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + key + "' needs at least " +
                             std::to_string(min_args) + " argument(s)",
                         line_start);
      }
    };
    if (key != "note") {
      for (const auto& w : words) {
        if (!is_name_token(w)) {
          throw ParseError("line " + std::to_string(line_no) + ": bad token '" + w + "'",
                           line_start);
        }
      }
    }

    if (key == "predicate") {
      if (words.size() != 3) throw ParseError("predicate line: 'predicate NAME ARITY'", line_start);
      unsigned arity = 0;
      try {
        arity = static_cast<unsigned>(std::stoul(words[2]));
      } catch (const std::exception&) {
        throw ParseError("predicate arity must be a number", line_start);
      }
      b.declare_predicate(words[1], arity);
    } else if (key == "worlds") {
      need(1);
      for (std::size_t i = 1; i < words.size(); ++i) {
        b.add_world(words[i]);
        declared_worlds.push_back(words[i]);
      }
    } else if (key == "elements") {
      need(1);
      for (std::size_t i = 1; i < words.size(); ++i) b.add_element(words[i]);
    } else if (key == "order") {
      if (words.size() != 3) throw ParseError("order line: 'order W V'", line_start);
      b.add_order(require_world(words[1]), require_world(words[2]));
    } else if (key == "domain") {
      need(1);
      const WorldId w = require_world(words[1]);
      for (std::size_t i = 2; i < words.size(); ++i) b.add_to_domain(w, b.element(words[i]));
    } else if (key == "fact") {
      need(2);
      const WorldId w = require_world(words[1]);
      std::vector<ElementId> tuple;
      for (std::size_t i = 3; i < words.size(); ++i) tuple.push_back(b.element(words[i]));
      b.set_fact(w, words[2], std::move(tuple));
    } else if (key == "root") {
      if (words.size() != 2) throw ParseError("root line: 'root W'", line_start);
      require_world(words[1]);
      doc.root = words[1];
    } else if (key == "last") {
      if (words.size() != 3) throw ParseError("last line: 'last NODE WORLD'", line_start);
      require_world(words[1]);
      doc.last[words[1]] = words[2];
    } else if (key == "note") {
      std::string rest;
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (i > 1) rest += ' ';
        rest += words[i];
      }
      doc.notes.push_back(rest);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown keyword '" + key + "'",
                       line_start);
    }
  }
  b.close_order();
  doc.model = b.build();
  return doc;
}

KripkeModel parse_model(std::string_view text) { return parse_model_document(text).model; }

std::string write_model(const KripkeModel& m, const ModelWriteOptions& options) {
  std::ostringstream out;
  for (const auto& n : options.notes) out << "note " << n << '\n';
  for (const auto& t : m.predicates()) out << "predicate " << t.name << ' ' << t.arity << '\n';
  const auto n = static_cast<WorldId>(m.world_count());
  out << "worlds";
  for (WorldId w = 0; w < n; ++w) out << ' ' << m.world_name(w);
  out << '\n';
  if (m.element_count() > 0) {
    out << "elements";
    for (std::size_t e = 0; e < m.element_count(); ++e) out << ' ' << m.element_name(static_cast<ElementId>(e));
    out << '\n';
  }
  if (options.root) out << "root " << *options.root << '\n';

  const bool partial = is_antisymmetric(m);
  for (WorldId w = 0; w < n; ++w) {
    for (WorldId v = 0; v < n; ++v) {
      if (w == v || !m.leq(w, v)) continue;
      if (partial) {
        bool covered = true;
        for (WorldId u = 0; u < n; ++u) {
          if (u != w && u != v && m.leq(w, u) && m.leq(u, v)) {
            covered = false;
            break;
          }
        }
        if (!covered) continue;
      }
      out << "order " << m.world_name(w) << ' ' << m.world_name(v) << '\n';
    }
  }
  for (WorldId w = 0; w < n; ++w) {
    out << "domain " << m.world_name(w);
    for (ElementId e : m.domain(w)) out << ' ' << m.element_name(e);
    out << '\n';
  }
  const std::size_t base = m.element_count();
  for (WorldId w = 0; w < n; ++w) {
    for (std::size_t p = 0; p < m.predicates().size(); ++p) {
      const auto& t = m.predicates()[p];
      std::size_t tuples = 1;
      for (unsigned i = 0; i < t.arity; ++i) tuples *= base;
      for (std::size_t idx = 0; idx < tuples; ++idx) {
        if (!m.holds(w, p, idx)) continue;
        out << "fact " << m.world_name(w) << ' ' << t.name;
        std::vector<ElementId> tuple(t.arity);
        std::size_t rest = idx;
        for (unsigned i = t.arity; i-- > 0;) {
          tuple[i] = static_cast<ElementId>(rest % base);
          rest /= base;
        }
        for (ElementId e : tuple) out << ' ' << m.element_name(e);
        out << '\n';
      }
    }
  }
  for (const auto& [node, world] : options.last) out << "last " << node << ' ' << world << '\n';
  return out.str();
}

}  // namespace fok
