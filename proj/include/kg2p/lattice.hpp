#pragma once

// Candidate lattice over one sentence. Each column holds the ranked
// candidates of one morpheme; neighbouring candidates may follow each other
// only if the right label of the first and the left label of the second form
// a licensed pair. Phrases are independent: a phrase edge is checked against
// the pseudo-label "|".

#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kg2p/error.hpp"
#include "kg2p/text.hpp"

namespace kg2p {

/// Connects to every label, including phrase edges.
inline const std::string kNeutralLabel = "·";
inline const std::string kPhraseEdge = "|";

class NoValidPath : public Error {
public:
  explicit NoValidPath(std::size_t column)
      : Error("no valid path through column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

class ConnectivityTable {
public:
  void add(const std::string& right, const std::string& left) {
    pairs_.emplace(right, left);
    if (right != kPhraseEdge) rights_.insert(right);
    if (left != kPhraseEdge) lefts_.insert(left);
  }

  bool knows_right(const std::string& l) const { return l == kNeutralLabel || rights_.count(l) > 0; }
  bool knows_left(const std::string& l) const { return l == kNeutralLabel || lefts_.count(l) > 0; }

  /// Raw table lookup; either side may be the phrase edge.
  bool licensed(const std::string& right, const std::string& left) const {
    if (right == kNeutralLabel || left == kNeutralLabel) return true;
    return pairs_.count({right, left}) > 0;
  }

  const std::set<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
  const std::set<std::string>& right_labels() const { return rights_; }
  const std::set<std::string>& left_labels() const { return lefts_; }

  // Each line: right-label TAB left-label.
  static ConnectivityTable load(const std::string& path) {
    ConnectivityTable t;
    read_resource_lines(path, [&](std::string_view line, std::size_t no) {
      auto f = split(line, '\t');
      if (f.size() != 2) throw ResourceError(path, no, "expected: right-label<TAB>left-label");
      auto r = std::string(trim(f[0])), l = std::string(trim(f[1]));
      if (r.empty() || l.empty()) throw ResourceError(path, no, "empty label");
      if (r == kNeutralLabel || l == kNeutralLabel) throw ResourceError(path, no, "the neutral label is implicit");
      t.add(r, l);
    });
    return t;
  }

private:
  std::set<std::pair<std::string, std::string>> pairs_;
  std::set<std::string> rights_, lefts_;
};

struct LatticeNode {
  std::string left;
  std::string right;
};

/// Whether `next` may directly follow `prev`. Labels outside the table's
/// inventory raise UnknownLabel.
inline bool check_connectivity(const LatticeNode& prev, const LatticeNode& next, const ConnectivityTable& table) {
  if (!table.knows_right(prev.right)) throw UnknownLabel(prev.right);
  if (!table.knows_left(next.left)) throw UnknownLabel(next.left);
  return table.licensed(prev.right, next.left);
}

/// A checkpoint on a path through one phrase: the phrase start, a link
/// between two columns, or the phrase end.
struct Gate {
  enum Kind { Start, Link, End } kind;
  std::size_t column;  // for Link: the left column

  friend bool operator==(const Gate&, const Gate&) = default;
};

inline std::string describe(const Gate& g) {
  switch (g.kind) {
    case Gate::Start: return "phrase start at column " + std::to_string(g.column);
    case Gate::Link: return "link " + std::to_string(g.column) + "-" + std::to_string(g.column + 1);
    case Gate::End: return "phrase end at column " + std::to_string(g.column);
  }
  return {};
}

struct PhonemeLattice {
  std::vector<std::vector<LatticeNode>> columns;
  std::vector<std::pair<std::size_t, std::size_t>> phrases;  // [first, last] column
  std::vector<std::vector<bool>> alive;                      // survives pruning
  std::vector<Gate> relaxed;                                  // gates accepting anything
  std::vector<std::string> diagnostics;

  bool relaxed_gate(const Gate& g) const {
    for (const auto& r : relaxed)
      if (r == g) return true;
    return false;
  }

  bool starts_ok(std::size_t c, std::size_t n, const ConnectivityTable& t) const {
    return relaxed_gate({Gate::Start, c}) || t.licensed(kPhraseEdge, columns[c][n].left);
  }
  bool ends_ok(std::size_t c, std::size_t n, const ConnectivityTable& t) const {
    return relaxed_gate({Gate::End, c}) || t.licensed(columns[c][n].right, kPhraseEdge);
  }
  bool links_ok(std::size_t c, std::size_t a, std::size_t b, const ConnectivityTable& t) const {
    return relaxed_gate({Gate::Link, c}) || check_connectivity(columns[c][a], columns[c + 1][b], t);
  }
};

namespace detail {

// Forward reachability inside one phrase. Returns the first gate at which
// nothing survives, if any.
inline std::optional<Gate> forward(const PhonemeLattice& L, std::size_t first, std::size_t last,
                                   const ConnectivityTable& t, std::vector<std::vector<bool>>& fwd) {
  for (std::size_t c = first; c <= last; ++c) fwd[c].assign(L.columns[c].size(), false);
  bool any = false;
  for (std::size_t n = 0; n < L.columns[first].size(); ++n) any |= fwd[first][n] = L.starts_ok(first, n, t);
  if (!any) return Gate{Gate::Start, first};
  for (std::size_t c = first; c < last; ++c) {
    any = false;
    for (std::size_t b = 0; b < L.columns[c + 1].size(); ++b)
      for (std::size_t a = 0; a < L.columns[c].size() && !fwd[c + 1][b]; ++a)
        if (fwd[c][a] && L.links_ok(c, a, b, t)) any = fwd[c + 1][b] = true;
    if (!any) return Gate{Gate::Link, c};
  }
  any = false;
  for (std::size_t n = 0; n < L.columns[last].size(); ++n) any |= fwd[last][n] && L.ends_ok(last, n, t);
  if (!any) return Gate{Gate::End, last};
  return std::nullopt;
}

inline void backward(const PhonemeLattice& L, std::size_t first, std::size_t last, const ConnectivityTable& t,
                     std::vector<std::vector<bool>>& bwd) {
  for (std::size_t c = first; c <= last; ++c) bwd[c].assign(L.columns[c].size(), false);
  for (std::size_t n = 0; n < L.columns[last].size(); ++n) bwd[last][n] = L.ends_ok(last, n, t);
  for (std::size_t c = last; c-- > first;)
    for (std::size_t a = 0; a < L.columns[c].size(); ++a)
      for (std::size_t b = 0; b < L.columns[c + 1].size() && !bwd[c][a]; ++b)
        if (bwd[c + 1][b] && L.links_ok(c, a, b, t)) bwd[c][a] = true;
}

}  // namespace detail

/// Builds the lattice and prunes every node that is not on some valid path
/// of its phrase. `break_after` lists the columns that end a phrase; the last
/// column always does. When a phrase has no valid path and `relax` is set,
/// the first gate where forward reachability dies is opened (accepting every
/// candidate or pair) with a diagnostic, repeatedly, until a path exists.
/// Otherwise NoValidPath is thrown.
inline PhonemeLattice build_and_prune(std::vector<std::vector<LatticeNode>> columns,
                                      const std::vector<std::size_t>& break_after, const ConnectivityTable& table,
                                      bool relax = true) {
  PhonemeLattice L;
  L.columns = std::move(columns);
  const std::size_t n = L.columns.size();
  for (std::size_t c = 0; c < n; ++c)
    if (L.columns[c].empty()) throw NoValidPath(c);
  std::size_t first = 0;
  for (std::size_t c = 0; c < n; ++c) {
    bool brk = c + 1 == n;
    for (auto b : break_after) brk |= b == c;
    if (brk) {
      L.phrases.emplace_back(first, c);
      first = c + 1;
    }
  }
  std::vector<std::vector<bool>> fwd(n), bwd(n);
  L.alive.resize(n);
  for (auto [s, e] : L.phrases) {
    while (auto gate = detail::forward(L, s, e, table, fwd)) {
      if (!relax) throw NoValidPath(gate->kind == Gate::Link ? gate->column + 1 : gate->column);
      L.relaxed.push_back(*gate);
      L.diagnostics.push_back("no valid path: relaxed " + describe(*gate));
    }
    detail::backward(L, s, e, table, bwd);
    for (std::size_t c = s; c <= e; ++c) {
      L.alive[c].resize(L.columns[c].size());
      for (std::size_t k = 0; k < L.columns[c].size(); ++k) L.alive[c][k] = fwd[c][k] && bwd[c][k];
    }
  }
  return L;
}

/// Picks, per column, the index of the chosen candidate: the surviving path
/// that is lexicographically smallest by candidate rank.
inline std::vector<std::size_t> select_path(const PhonemeLattice& L, const ConnectivityTable& table) {
  std::vector<std::size_t> choice(L.columns.size());
  for (auto [s, e] : L.phrases) {
    for (std::size_t c = s; c <= e; ++c) {
      bool found = false;
      for (std::size_t k = 0; k < L.columns[c].size() && !found; ++k) {
        if (!L.alive[c][k]) continue;
        if (c > s && !L.links_ok(c - 1, choice[c - 1], k, table)) continue;
        choice[c] = k;
        found = true;
      }
      if (!found) throw NoValidPath(c);
    }
  }
  return choice;
}

/// Human-readable dump for inspect-lattice.
inline std::string dump(const PhonemeLattice& L, const std::vector<std::string>& column_names = {},
                        const std::vector<std::vector<std::string>>& node_names = {},
                        const std::vector<std::size_t>& choice = {}) {
  std::ostringstream os;
  for (std::size_t p = 0; p < L.phrases.size(); ++p) {
    os << "phrase " << p << '\n';
    for (std::size_t c = L.phrases[p].first; c <= L.phrases[p].second; ++c) {
      os << "  column " << c;
      if (c < column_names.size()) os << ' ' << column_names[c];
      os << '\n';
      for (std::size_t k = 0; k < L.columns[c].size(); ++k) {
        bool chosen = c < choice.size() && choice[c] == k;
        os << "    " << (chosen ? '*' : L.alive[c][k] ? '+' : '-') << ' ' << k << ' ';
        if (c < node_names.size() && k < node_names[c].size()) os << node_names[c][k] << ' ';
        os << '[' << L.columns[c][k].left << ' ' << L.columns[c][k].right << "]\n";
      }
    }
  }
  for (const auto& d : L.diagnostics) os << "note: " << d << '\n';
  return os.str();
}

}  // namespace kg2p
