#pragma once

#include "bgncg/cost.hpp"
#include "bgncg/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bgncg {

enum class Concept { PS, BNE, BSE };

inline std::string to_string(Concept c) {
  switch (c) {
    case Concept::PS: return "PS";
    case Concept::BNE: return "BNE";
    case Concept::BSE: return "BSE";
  }
  return "?";
}

inline Concept parse_concept(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (t == "PS") return Concept::PS;
  if (t == "BNE") return Concept::BNE;
  if (t == "BSE") return Concept::BSE;
  throw InputError("unknown solution concept '" + std::string(s) + "' (expected ps, bne or bse)");
}

/// Joint deviation of a coalition: every removed edge has an endpoint in the
/// coalition, every added edge has both endpoints in it.
struct Move {
  Concept kind = Concept::PS;
  std::vector<Node> coalition;  // sorted
  EdgeList remove;              // sorted
  EdgeList add;                 // sorted

  void normalize() {
    std::sort(coalition.begin(), coalition.end());
    coalition.erase(std::unique(coalition.begin(), coalition.end()), coalition.end());
    std::sort(remove.begin(), remove.end());
    std::sort(add.begin(), add.end());
  }
  bool in_coalition(Node x) const { return std::binary_search(coalition.begin(), coalition.end(), x); }

  friend bool operator==(const Move& a, const Move& b) {
    return a.kind == b.kind && a.coalition == b.coalition && a.remove == b.remove && a.add == b.add;
  }
};

/// Canonical order: coalition size, coalition, removals, additions.
inline bool canonical_less(const Move& a, const Move& b) {
  if (a.coalition.size() != b.coalition.size()) return a.coalition.size() < b.coalition.size();
  if (a.coalition != b.coalition) return a.coalition < b.coalition;
  if (a.remove != b.remove) return a.remove < b.remove;
  return a.add < b.add;
}

inline std::string to_string(const Move& m) {
  std::string s = to_string(m.kind) + " coalition=[";
  for (std::size_t i = 0; i < m.coalition.size(); ++i) s += (i ? "," : "") + std::to_string(m.coalition[i]);
  s += "] remove=[";
  for (std::size_t i = 0; i < m.remove.size(); ++i) s += (i ? "," : "") + to_string(m.remove[i]);
  s += "] add=[";
  for (std::size_t i = 0; i < m.add.size(); ++i) s += (i ? "," : "") + to_string(m.add[i]);
  return s + "]";
}

class MoveError : public InputError {
 public:
  enum class Kind { RemovalNotPresent, AdditionAlreadyPresent, AdditionOutsideCoalition, RemovalOutsideCoalition, BadNode };

  MoveError(Kind k, const Edge& e, const std::string& what) : InputError(what), kind_(k), edge_(e) {}
  Kind kind() const { return kind_; }
  const Edge& edge() const { return edge_; }

 private:
  Kind kind_;
  Edge edge_;
};

/// G - R + A; throws MoveError when the move is not well-formed against G.
inline Network apply_move(const Network& g, const Move& m) {
  for (Node x : m.coalition)
    if (x < 0 || x >= g.n()) throw MoveError(MoveError::Kind::BadNode, Edge(), "coalition node out of range");
  Network out = g;
  for (const Edge& e : m.remove) {
    if (!g.has(e)) throw MoveError(MoveError::Kind::RemovalNotPresent, e, "removed edge " + to_string(e) + " is not in the network");
    if (!m.in_coalition(e.u) && !m.in_coalition(e.v)) {
      throw MoveError(MoveError::Kind::RemovalOutsideCoalition, e, "removed edge " + to_string(e) + " has no endpoint in the coalition");
    }
    out.remove(e);
  }
  for (const Edge& e : m.add) {
    if (g.has(e)) throw MoveError(MoveError::Kind::AdditionAlreadyPresent, e, "added edge " + to_string(e) + " is already present");
    if (!m.in_coalition(e.u) || !m.in_coalition(e.v)) {
      throw MoveError(MoveError::Kind::AdditionOutsideCoalition, e, "added edge " + to_string(e) + " leaves the coalition");
    }
    out.add(e);
  }
  return out;
}

/// True when the move has the shape its concept allows.
inline bool has_concept_shape(const Move& m) {
  switch (m.kind) {
    case Concept::PS:
      return (m.coalition.size() == 1 && m.remove.size() == 1 && m.add.empty() && m.remove[0].touches(m.coalition[0])) ||
             (m.coalition.size() == 2 && m.remove.empty() && m.add.size() == 1 && m.add[0] == Edge(m.coalition[0], m.coalition[1]));
    case Concept::BNE: {
      if (m.coalition.empty() || (m.remove.empty() && m.add.empty())) return false;
      // Some mover must touch every change, and the coalition is mover + partners.
      for (Node u : m.coalition) {
        bool ok = std::all_of(m.remove.begin(), m.remove.end(), [&](const Edge& e) { return e.touches(u); }) &&
                  std::all_of(m.add.begin(), m.add.end(), [&](const Edge& e) { return e.touches(u); });
        if (!ok) continue;
        std::vector<Node> expect{u};
        for (const Edge& e : m.add) expect.push_back(e.other(u));
        std::sort(expect.begin(), expect.end());
        if (expect == m.coalition) return true;
      }
      return false;
    }
    case Concept::BSE:
      return !m.coalition.empty() && !(m.remove.empty() && m.add.empty());
  }
  return false;
}

struct ReplayResult {
  Network after;
  std::map<Node, Scalar> deltas;  // cost change of each coalition member
  bool improving = false;         // every member strictly decreases its cost
};

/// Applies the move and compares exact per-agent costs before and after.
inline ReplayResult replay_move(const Instance& inst, const Network& g, const Move& m) {
  ReplayResult r;
  r.after = apply_move(g, m);
  const CostBreakdown before = cost_report(inst, g);
  const CostBreakdown after = cost_report(inst, r.after);
  r.improving = !m.coalition.empty();
  for (Node x : m.coalition) {
    Scalar d = cost_delta(before.total[static_cast<std::size_t>(x)], after.total[static_cast<std::size_t>(x)]);
    if (d.sign() >= 0) r.improving = false;
    r.deltas.emplace(x, std::move(d));
  }
  return r;
}

}  // namespace bgncg
