#include "bangl/prover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace bangl {

namespace {

using Clock = std::chrono::steady_clock;
using Formulas = std::vector<Formula>;
using Counts = std::vector<int>;

// An antecedent formula together with the root positions it was built from.
// Copies made by Contr share a label; different words never do.
struct Item {
  Formula f;
  std::string label;

  friend bool operator==(const Item& a, const Item& b) {
    return a.label == b.label && a.f == b.f;
  }
  friend bool operator!=(const Item& a, const Item& b) { return !(a == b); }
};
using Items = std::vector<Item>;

std::string join_labels(const std::vector<const Item*>& parts) {
  std::set<std::string> tokens;
  for (const Item* item : parts) {
    std::size_t from = 0;
    const std::string& l = item->label;
    while (from <= l.size()) {
      const std::size_t to = std::min(l.find(',', from), l.size());
      if (to > from) tokens.insert(l.substr(from, to - from));
      from = to + 1;
    }
  }
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ',';
    out += t;
  }
  return out;
}

// Label for a hypothesis introduced by a right rule: one past the highest
// hypothesis number still present.
std::string hypothesis_label(const Items& a, const Items& b) {
  std::size_t next = 0;
  for (const Items* items : {&a, &b}) {
    for (const auto& item : *items) {
      const std::string& l = item.label;
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] != 'h' || (i > 0 && l[i - 1] != ',')) continue;
        next = std::max(next, std::stoul(l.substr(i + 1)) + 1);
      }
    }
  }
  return "h" + std::to_string(next);
}

// ---------------------------------------------------------------------------
// Abstract proofs
//
// The search works on sequents up to the placement of !-formulas: a state is
// the ordered list of non-! formulas (the skeleton), the sorted multiset of
// top-level !-formulas (the pool), the goal, and the exact number of Contr
// nodes still to be spent. Perm moves are recovered afterwards when an
// abstract proof is turned into a concrete Derivation.

enum class StepKind {
  kAx,
  kBangAx,
  kUnderR,
  kOverR,
  kProdL,
  kUnderL,
  kOverL,
  kProdR,
  kBangR,
  kUnbangBang,
  kUnbangProduct,
};

struct AStep;
using StepPtr = std::shared_ptr<const AStep>;

struct AStep {
  StepKind kind = StepKind::kAx;
  bool from_pool = false;
  // Skeleton index of the principal formula, or its pool index.
  std::size_t principal = 0;
  // Skeleton insertion point of a principal taken from the pool.
  std::size_t insert = 0;
  // Skeleton formulas in Γ, or the skeleton split of ProdR.
  std::size_t block = 0;
  // Pool indices sent to Γ, or to the left premise of ProdR.
  std::vector<std::size_t> chosen;
  // Copies of each formula entering the pool in the last premise.
  std::vector<std::size_t> mult;
  std::vector<StepPtr> premises;
};

struct RootProof {
  std::size_t contractions = 0;
  std::vector<std::size_t> mult;
  StepPtr body;
};

constexpr std::size_t kNoFence = static_cast<std::size_t>(-1);

struct State {
  Items skel;
  Items pool;
  Formula goal;
  std::size_t c = 0;
  // Skeleton index of the result left by the previous left rule. Left rules
  // that do not reach it are tried before that rule instead.
  std::size_t fence = kNoFence;
};

bool item_less(const Item& a, const Item& b) {
  if (a.f.text() != b.f.text()) return a.f.text() < b.f.text();
  return a.label < b.label;
}

void sort_pool(Items& pool) { std::stable_sort(pool.begin(), pool.end(), item_less); }

std::string state_key(const State& s) {
  std::string key;
  for (const auto& item : s.skel) {
    key += item.f.text();
    key += '@';
    key += item.label;
    key += '\x1f';
  }
  key += '\x1e';
  for (const auto& item : s.pool) {
    key += item.f.text();
    key += '@';
    key += item.label;
    key += '\x1f';
  }
  key += '\x1e';
  key += s.goal.text();
  key += '\x1e';
  key += std::to_string(s.c);
  if (s.fence != kNoFence) key += "|" + std::to_string(s.fence);
  return key;
}

std::size_t bangs_in(const Formula& f) {
  std::size_t n = f.is_bang() ? 1 : 0;
  if (f.is_bang()) return n + bangs_in(f.inner());
  if (f.is_atom()) return 0;
  return bangs_in(f.left()) + bangs_in(f.right());
}

// ---------------------------------------------------------------------------
// Atom-count pruning. In a provable sequent the atom counts of the two sides
// agree once every Contr copy is added to the antecedent, and each copy is a
// !-formula that enters the pool at some point of the proof.

class CountOracle {
 public:
  explicit CountOracle(const Sequent& root) {
    for (const auto& f : root.antecedent) collect_atoms(f);
    collect_atoms(root.goal);
  }

  Counts count(const Formula& f) const {
    Counts out(atoms_.size(), 0);
    add_count(f, 1, out);
    return out;
  }

  bool feasible(const State& s) const {
    Counts deficit = count(s.goal);
    for (const auto& item : s.skel) add_count(item.f, -1, deficit);
    for (const auto& item : s.pool) add_count(item.f, -1, deficit);

    std::set<Counts> entries;
    for (const auto& item : s.skel) entries_ante(item.f, entries);
    for (const auto& item : s.pool) entries_ante(item.f, entries);
    entries_goal(s.goal, entries);

    if (s.c == 0) {
      return std::all_of(deficit.begin(), deficit.end(), [](int x) { return x == 0; });
    }
    if (entries.empty()) return false;
    std::set<Counts> reach{Counts(atoms_.size(), 0)};
    for (std::size_t step = 0; step < s.c; ++step) {
      std::set<Counts> next;
      for (const auto& r : reach) {
        for (const auto& e : entries) {
          Counts sum = r;
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += e[i];
          next.insert(std::move(sum));
        }
      }
      reach = std::move(next);
    }
    return reach.count(deficit) > 0;
  }

 private:
  void collect_atoms(const Formula& f) {
    if (f.is_atom()) {
      if (index_.emplace(f.name(), atoms_.size()).second) atoms_.push_back(f.name());
      return;
    }
    if (f.is_bang()) {
      collect_atoms(f.inner());
      return;
    }
    collect_atoms(f.left());
    collect_atoms(f.right());
  }

  void add_count(const Formula& f, int sign, Counts& out) const {
    switch (f.kind()) {
      case Formula::Kind::kAtom: {
        auto it = index_.find(f.name());
        if (it != index_.end()) out[it->second] += sign;
        return;
      }
      case Formula::Kind::kBang:
        add_count(f.inner(), sign, out);
        return;
      case Formula::Kind::kProduct:
        add_count(f.left(), sign, out);
        add_count(f.right(), sign, out);
        return;
      case Formula::Kind::kOver:
      case Formula::Kind::kUnder:
        add_count(f.result(), sign, out);
        add_count(f.argument(), -sign, out);
        return;
    }
  }

  // Copies a formula in antecedent position can still give rise to, beyond
  // the formula itself.
  void entries_ante(const Formula& f, std::set<Counts>& out) const {
    switch (f.kind()) {
      case Formula::Kind::kAtom:
        return;
      case Formula::Kind::kBang:
        if (f.inner().is_bang()) out.insert(count(f.inner()));
        entries_ante(f.inner(), out);
        return;
      case Formula::Kind::kProduct:
        for (const Formula* part : {&f.left(), &f.right()}) {
          if (part->is_bang()) out.insert(count(*part));
          entries_ante(*part, out);
        }
        return;
      case Formula::Kind::kOver:
      case Formula::Kind::kUnder:
        if (f.result().is_bang()) out.insert(count(f.result()));
        entries_ante(f.result(), out);
        entries_goal(f.argument(), out);
        return;
    }
  }

  void entries_goal(const Formula& f, std::set<Counts>& out) const {
    switch (f.kind()) {
      case Formula::Kind::kAtom:
        return;
      case Formula::Kind::kBang:
        entries_goal(f.inner(), out);
        return;
      case Formula::Kind::kProduct:
        entries_goal(f.left(), out);
        entries_goal(f.right(), out);
        return;
      case Formula::Kind::kOver:
      case Formula::Kind::kUnder:
        if (f.argument().is_bang()) out.insert(count(f.argument()));
        entries_ante(f.argument(), out);
        entries_goal(f.result(), out);
        return;
    }
  }

  std::vector<std::string> atoms_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------

class Searcher {
 public:
  Searcher(const Sequent& root, const SearchConfig& cfg)
      : cfg_(cfg), oracle_(root), deadline_(Clock::now() + cfg.timeout) {}

  std::vector<RootProof> solve_root(const Sequent& root, std::size_t c) {
    Items skel, entering;
    for (std::size_t i = 0; i < root.antecedent.size(); ++i) {
      place(Item{root.antecedent[i], std::to_string(i)}, skel, entering);
    }
    std::vector<RootProof> out;
    for_each_entry(entering, c, [&](const std::vector<std::size_t>& mult,
                                    std::size_t used) {
      State s{skel, with_copies({}, entering, mult), root.goal, c - used};
      for (const auto& body : solve(s)) {
        if (out.size() >= cfg_.max_solutions) return;
        out.push_back(RootProof{c, mult, body});
      }
    });
    return out;
  }

  const SearchStats& stats() const { return stats_; }

 private:
  using Steps = std::vector<StepPtr>;

  void tick() {
    if ((++ticks_ & 0xff) == 0 && Clock::now() > deadline_) throw SearchTimeout();
  }

  bool full(const Steps& steps) const { return steps.size() >= cfg_.max_solutions; }

  Items with_copies(Items pool, const Items& entering,
                    const std::vector<std::size_t>& mult) const {
    for (std::size_t i = 0; i < entering.size(); ++i) {
      for (std::size_t k = 0; k < mult[i]; ++k) pool.push_back(entering[i]);
    }
    sort_pool(pool);
    return pool;
  }

  // Enumerates copy counts 1..budget+1 for each entering formula, spending
  // at most c contractions in total.
  void for_each_entry(
      const Items& entering, std::size_t c,
      const std::function<void(const std::vector<std::size_t>&, std::size_t)>& fn) {
    std::vector<std::size_t> mult(entering.size(), 1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                             std::size_t used) {
      if (i == entering.size()) {
        fn(mult, used);
        return;
      }
      for (std::size_t m = 1; m <= cfg_.contraction_budget + 1 && used + m - 1 <= c;
           ++m) {
        mult[i] = m;
        rec(i + 1, used + m - 1);
      }
      mult[i] = 1;
    };
    rec(0, 0);
  }

  // Splits off bang formulas so they enter the pool.
  static void place(Item item, Items& skel_part, Items& entering) {
    (item.f.is_bang() ? entering : skel_part).push_back(std::move(item));
  }

  // Premise with formulas entering the pool: one step per copy choice and
  // per premise proof.
  void single_premise(const AStep& base, const Items& skel, const Items& pool,
                      const Items& entering, const Formula& goal, std::size_t c,
                      Steps& out) {
    for_each_entry(entering, c, [&](const std::vector<std::size_t>& mult,
                                    std::size_t used) {
      if (full(out)) return;
      State s{skel, with_copies(pool, entering, mult), goal, c - used};
      for (const auto& p : solve(s)) {
        if (full(out)) return;
        auto step = std::make_shared<AStep>(base);
        step->mult = mult;
        step->premises = {p};
        out.push_back(std::move(step));
      }
    });
  }

  // Sub-multisets of a sorted pool, as index lists taking the first k of each
  // run of equal items.
  static std::vector<std::vector<std::size_t>> sub_multisets(const Items& pool) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < pool.size();) {
      std::size_t j = i;
      while (j < pool.size() && pool[j] == pool[i]) ++j;
      runs.emplace_back(i, j - i);
      i = j;
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
      if (r == runs.size()) {
        out.push_back(pick);
        return;
      }
      for (std::size_t k = 0; k <= runs[r].second; ++k) {
        for (std::size_t t = 0; t < k; ++t) pick.push_back(runs[r].first + t);
        rec(r + 1);
        pick.resize(pick.size() - k);
      }
    };
    rec(0);
    return out;
  }

  static Items take(const Items& pool, const std::vector<std::size_t>& idx) {
    Items out;
    for (std::size_t i : idx) out.push_back(pool[i]);
    return out;
  }

  static Items drop(const Items& pool, const std::vector<std::size_t>& idx) {
    Items out;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(pool[i]);
    }
    return out;
  }

  static Items slice(const Items& v, std::size_t from, std::size_t to) {
    return Items(v.begin() + from, v.begin() + to);
  }

  // Left rule with principal `functor`. `pool` excludes a principal taken
  // from the pool; `pool_index` maps its indices back to the state's pool.
  void left_rule(const State& s, const Item& functor, AStep base,
                 const Items& skel_without, std::size_t at, const Items& pool,
                 const std::vector<std::size_t>& pool_index, Steps& out) {
    const Formula& fun = functor.f;
    const bool under = fun.kind() == Formula::Kind::kUnder;
    const std::size_t max_block = under ? at : skel_without.size() - at;
    const auto subsets = sub_multisets(pool);
    base.kind = under ? StepKind::kUnderL : StepKind::kOverL;

    if (cfg_.normal_form && s.goal.is_product() && !fun.result().is_bang()) {
      return;
    }

    for (std::size_t g = 0; g <= max_block; ++g) {
      const std::size_t lo = under ? at - g : at;
      const std::size_t hi = under ? at : at + g;
      if (cfg_.normal_form && s.fence != kNoFence) {
        // Last skeleton index touched; a pool principal sits before skel[at].
        const bool left_of_fence =
            base.from_pool ? (under ? at <= s.fence : hi <= s.fence)
                           : (under ? at < s.fence : hi < s.fence);
        if (left_of_fence) continue;
      }
      const Items block = slice(skel_without, lo, hi);
      const Items tail = slice(skel_without, hi, skel_without.size());

      for (const auto& x : subsets) {
        const Items gamma_pool = take(pool, x);
        const Items rest_pool = drop(pool, x);
        std::vector<const Item*> parts{&functor};
        for (const auto& item : block) parts.push_back(&item);
        for (const auto& item : gamma_pool) parts.push_back(&item);
        Items rest_skel = slice(skel_without, 0, lo);
        Items entering;
        place(Item{fun.result(), join_labels(parts)}, rest_skel, entering);
        rest_skel.insert(rest_skel.end(), tail.begin(), tail.end());

        for (std::size_t c1 = 0; c1 <= s.c; ++c1) {
          if (full(out)) return;
          State arg{block, gamma_pool, fun.argument(), c1};
          const Steps& first = solve(arg);
          if (first.empty()) continue;
          AStep step = base;
          step.block = g;
          step.chosen.clear();
          for (std::size_t i : x) step.chosen.push_back(pool_index[i]);
          for_each_entry(entering, s.c - c1, [&](const std::vector<std::size_t>& mult,
                                                 std::size_t used) {
            if (full(out)) return;
            State rest{rest_skel, with_copies(rest_pool, entering, mult), s.goal,
                       s.c - c1 - used,
                       entering.empty() && cfg_.normal_form ? lo : kNoFence};
            const Steps& second = solve(rest);
            for (const auto& p1 : first) {
              for (const auto& p2 : second) {
                if (full(out)) return;
                auto made = std::make_shared<AStep>(step);
                made->mult = mult;
                made->premises = {p1, p2};
                out.push_back(std::move(made));
              }
            }
          });
        }
      }
    }
  }

  Steps compute(const State& s) {
    Steps out;
    const Formula& goal = s.goal;

    // Right rules and ProdL are applied eagerly.
    if (goal.kind() == Formula::Kind::kUnder || goal.kind() == Formula::Kind::kOver) {
      const bool under = goal.kind() == Formula::Kind::kUnder;
      Items skel = s.skel, entering;
      Item arg{goal.argument(), hypothesis_label(s.skel, s.pool)};
      if (arg.f.is_bang()) {
        entering.push_back(std::move(arg));
      } else if (under) {
        skel.insert(skel.begin(), std::move(arg));
      } else {
        skel.push_back(std::move(arg));
      }
      AStep base;
      base.kind = under ? StepKind::kUnderR : StepKind::kOverR;
      single_premise(base, skel, s.pool, entering, goal.result(), s.c, out);
      return out;
    }
    for (std::size_t p = 0; p < s.skel.size(); ++p) {
      const Item& product = s.skel[p];
      if (!product.f.is_product()) continue;
      Items skel = slice(s.skel, 0, p), entering;
      place(Item{product.f.left(), product.label}, skel, entering);
      place(Item{product.f.right(), product.label}, skel, entering);
      const Items tail = slice(s.skel, p + 1, s.skel.size());
      skel.insert(skel.end(), tail.begin(), tail.end());
      AStep base;
      base.kind = StepKind::kProdL;
      base.principal = p;
      single_premise(base, skel, s.pool, entering, goal, s.c, out);
      return out;
    }

    bool axiom = false;
    if (s.c == 0) {
      if ((s.skel.size() == 1 && s.pool.empty() && s.skel[0].f == goal) ||
          (s.skel.empty() && s.pool.size() == 1 && s.pool[0].f == goal)) {
        auto step = std::make_shared<AStep>();
        step->kind = StepKind::kAx;
        out.push_back(std::move(step));
        axiom = true;
      } else if (s.skel.empty() && s.pool.size() == 1 && s.pool[0].f.inner() == goal) {
        auto step = std::make_shared<AStep>();
        step->kind = StepKind::kBangAx;
        out.push_back(std::move(step));
      }
    }

    std::vector<std::size_t> identity(s.pool.size());
    std::iota(identity.begin(), identity.end(), 0);

    for (std::size_t p = 0; p < s.skel.size() && !full(out); ++p) {
      if (!s.skel[p].f.is_functor()) continue;
      Items without = s.skel;
      without.erase(without.begin() + p);
      AStep base;
      base.principal = p;
      left_rule(s, s.skel[p], base, without, p, s.pool, identity, out);
    }

    for (std::size_t i = 0; i < s.pool.size() && !full(out); ++i) {
      if (i > 0 && s.pool[i] == s.pool[i - 1]) continue;
      const Item opened{s.pool[i].f.inner(), s.pool[i].label};
      if (!opened.f.is_functor()) continue;
      Items pool = s.pool;
      pool.erase(pool.begin() + i);
      std::vector<std::size_t> index;
      for (std::size_t j = 0; j < s.pool.size(); ++j) {
        if (j != i) index.push_back(j);
      }
      for (std::size_t q = 0; q <= s.skel.size() && !full(out); ++q) {
        AStep base;
        base.from_pool = true;
        base.principal = i;
        base.insert = q;
        left_rule(s, opened, base, s.skel, q, pool, index, out);
      }
    }

    if (goal.is_product()) {
      const auto subsets = sub_multisets(s.pool);
      for (std::size_t k = 0; k <= s.skel.size(); ++k) {
        for (const auto& x : subsets) {
          for (std::size_t c1 = 0; c1 <= s.c; ++c1) {
            if (full(out)) break;
            State left{slice(s.skel, 0, k), take(s.pool, x), goal.left(), c1};
            const Steps& first = solve(left);
            if (first.empty()) continue;
            State right{slice(s.skel, k, s.skel.size()), drop(s.pool, x), goal.right(),
                        s.c - c1};
            const Steps& second = solve(right);
            for (const auto& p1 : first) {
              for (const auto& p2 : second) {
                if (full(out)) break;
                auto step = std::make_shared<AStep>();
                step->kind = StepKind::kProdR;
                step->block = k;
                step->chosen = x;
                step->premises = {p1, p2};
                out.push_back(std::move(step));
              }
            }
          }
        }
      }
    }

    for (std::size_t i = 0; i < s.pool.size() && !full(out); ++i) {
      if (i > 0 && s.pool[i] == s.pool[i - 1]) continue;
      const Formula& inner = s.pool[i].f.inner();
      const std::string& label = s.pool[i].label;
      Items pool = s.pool;
      pool.erase(pool.begin() + i);
      if (inner.is_bang()) {
        AStep base;
        base.kind = StepKind::kUnbangBang;
        base.principal = i;
        single_premise(base, s.skel, pool, {Item{inner, label}}, goal, s.c, out);
      } else if (inner.is_product()) {
        for (std::size_t q = 0; q <= s.skel.size(); ++q) {
          Items skel = slice(s.skel, 0, q), entering;
          place(Item{inner.left(), label}, skel, entering);
          place(Item{inner.right(), label}, skel, entering);
          const Items tail = slice(s.skel, q, s.skel.size());
          skel.insert(skel.end(), tail.begin(), tail.end());
          AStep base;
          base.kind = StepKind::kUnbangProduct;
          base.principal = i;
          base.insert = q;
          single_premise(base, skel, pool, entering, goal, s.c, out);
        }
      }
    }

    if (goal.is_bang() && s.skel.empty() && !axiom && !full(out)) {
      State s2{{}, s.pool, goal.inner(), s.c};
      for (const auto& p : solve(s2)) {
        if (full(out)) break;
        auto step = std::make_shared<AStep>();
        step->kind = StepKind::kBangR;
        step->premises = {p};
        out.push_back(std::move(step));
      }
    }
    return out;
  }

  const Steps& solve(const State& s) {
    tick();
    const std::string key = state_key(s);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    ++stats_.states;
    Steps result;
    if (oracle_.feasible(s)) result = compute(s);
    return memo_.emplace(key, std::move(result)).first->second;
  }

  const SearchConfig& cfg_;
  CountOracle oracle_;
  Clock::time_point deadline_;
  std::size_t ticks_ = 0;
  SearchStats stats_;
  std::unordered_map<std::string, Steps> memo_;
};

// ---------------------------------------------------------------------------
// Concretization

struct View {
  std::vector<std::size_t> skel_pos;
  std::vector<std::size_t> pool_pos;
};

View view_of(const Items& ante) {
  View v;
  for (std::size_t i = 0; i < ante.size(); ++i) {
    (ante[i].f.is_bang() ? v.pool_pos : v.skel_pos).push_back(i);
  }
  std::stable_sort(v.pool_pos.begin(), v.pool_pos.end(),
                   [&](std::size_t a, std::size_t b) {
                     return item_less(ante[a], ante[b]);
                   });
  return v;
}

Derivation node(const Items& ante, const Formula& goal, Rule rule,
                std::vector<std::size_t> data = {}) {
  Derivation d;
  Formulas formulas;
  formulas.reserve(ante.size());
  for (const auto& item : ante) formulas.push_back(item.f);
  d.conclusion = Sequent{std::move(formulas), goal};
  d.rule = rule;
  d.data = std::move(data);
  return d;
}

// Nests chain[0] ← chain[1] ← … ← inner.
Derivation wrap(std::vector<Derivation> chain, Derivation inner) {
  for (std::size_t i = chain.size(); i-- > 0;) {
    chain[i].premises = {std::move(inner)};
    inner = std::move(chain[i]);
  }
  return inner;
}

class Realizer {
 public:
  Derivation realize(const AStep& s, Items ante, const Formula& goal) {
    const View v = view_of(ante);
    switch (s.kind) {
      case StepKind::kAx:
        return node(std::move(ante), goal, Rule::kAx);

      case StepKind::kBangAx: {
        Derivation d = node(ante, goal, Rule::kBangL, {0});
        d.premises = {node({Item{ante[0].f.inner(), ante[0].label}}, goal, Rule::kAx)};
        return d;
      }

      case StepKind::kUnderR:
      case StepKind::kOverR: {
        const bool under = s.kind == StepKind::kUnderR;
        Derivation d = node(ante, goal, under ? Rule::kUnderR : Rule::kOverR);
        Items prem = ante;
        const std::size_t at = under ? 0 : prem.size();
        prem.insert(prem.begin() + at,
                    Item{goal.argument(), hypothesis_label(ante, {})});
        std::vector<std::size_t> entering;
        if (goal.argument().is_bang()) entering.push_back(at);
        d.premises = {enter(*s.premises[0], std::move(prem), goal.result(), entering,
                            s.mult)};
        return d;
      }

      case StepKind::kProdL: {
        const std::size_t pos = v.skel_pos[s.principal];
        const Formula product = ante[pos].f;
        const std::string label = ante[pos].label;
        Derivation d = node(ante, goal, Rule::kProdL, {pos});
        Items prem = ante;
        prem[pos] = Item{product.left(), label};
        prem.insert(prem.begin() + pos + 1, Item{product.right(), label});
        std::vector<std::size_t> entering;
        if (product.left().is_bang()) entering.push_back(pos);
        if (product.right().is_bang()) entering.push_back(pos + 1);
        d.premises = {enter(*s.premises[0], std::move(prem), goal, entering, s.mult)};
        return d;
      }

      case StepKind::kBangR: {
        Derivation d = node(ante, goal, Rule::kBangR);
        d.premises = {realize(*s.premises[0], ante, goal.inner())};
        return d;
      }

      case StepKind::kUnbangBang: {
        const std::size_t pos = v.pool_pos[s.principal];
        Derivation d = node(ante, goal, Rule::kBangL, {pos});
        Items prem = ante;
        prem[pos].f = ante[pos].f.inner();
        d.premises = {enter(*s.premises[0], std::move(prem), goal, {pos}, s.mult)};
        return d;
      }

      case StepKind::kUnbangProduct: {
        const std::size_t item = v.pool_pos[s.principal];
        std::vector<int> group(ante.size(), 0);
        for (std::size_t k = 0; k < v.skel_pos.size(); ++k) {
          group[v.skel_pos[k]] = k < s.insert ? 0 : 2;
        }
        for (std::size_t p : v.pool_pos) group[p] = p < item ? 0 : 2;
        group[item] = 1;
        auto [chain, arranged, where] = arrange(ante, goal, group);
        const std::size_t pos = where[item];
        const Formula product = arranged[pos].f.inner();
        const std::string label = arranged[pos].label;
        chain.push_back(node(arranged, goal, Rule::kBangL, {pos}));
        Items opened = arranged;
        opened[pos].f = product;
        chain.push_back(node(opened, goal, Rule::kProdL, {pos}));
        Items prem = opened;
        prem[pos] = Item{product.left(), label};
        prem.insert(prem.begin() + pos + 1, Item{product.right(), label});
        std::vector<std::size_t> entering;
        if (product.left().is_bang()) entering.push_back(pos);
        if (product.right().is_bang()) entering.push_back(pos + 1);
        return wrap(std::move(chain),
                    enter(*s.premises[0], std::move(prem), goal, entering, s.mult));
      }

      case StepKind::kUnderL:
      case StepKind::kOverL:
        return realize_left(s, ante, goal, v);

      case StepKind::kProdR: {
        std::vector<int> group(ante.size(), 1);
        for (std::size_t k = 0; k < s.block; ++k) group[v.skel_pos[k]] = 0;
        for (std::size_t i : s.chosen) group[v.pool_pos[i]] = 0;
        const std::size_t split =
            static_cast<std::size_t>(std::count(group.begin(), group.end(), 0));
        auto [chain, arranged, where] = arrange(ante, goal, group);
        Derivation d = node(arranged, goal, Rule::kProdR, {split});
        d.premises = {
            realize(*s.premises[0], Items(arranged.begin(), arranged.begin() + split),
                    goal.left()),
            realize(*s.premises[1], Items(arranged.begin() + split, arranged.end()),
                    goal.right())};
        return wrap(std::move(chain), std::move(d));
      }
    }
    throw std::logic_error("unknown abstract step");
  }

 private:
  struct Run {
    std::size_t first_index = 0;
    std::vector<std::size_t> positions;
    std::size_t chosen = 0;
  };

  // Runs of equal pool items with their positions and how many of them
  // the step selects.
  static std::vector<Run> pool_runs(const Items& ante, const View& v,
                                    const std::vector<std::size_t>& chosen) {
    std::vector<Run> runs;
    for (std::size_t i = 0; i < v.pool_pos.size(); ++i) {
      if (i == 0 || ante[v.pool_pos[i]] != ante[v.pool_pos[i - 1]]) {
        runs.push_back(Run{i, {}, 0});
      }
      runs.back().positions.push_back(v.pool_pos[i]);
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) {
        ++runs.back().chosen;
      }
    }
    return runs;
  }

  struct Arranged {
    std::vector<Derivation> chain;
    Items ante;
    // Old position → new position.
    std::vector<std::size_t> where;
  };

  // Stable-sorts the antecedent by group using Perm moves on !-formulas.
  // Non-! formulas must already be in group order.
  static Arranged arrange(const Items& ante, const Formula& goal,
                          const std::vector<int>& group) {
    std::vector<std::size_t> target(ante.size());
    std::iota(target.begin(), target.end(), 0);
    std::stable_sort(target.begin(), target.end(),
                     [&](std::size_t a, std::size_t b) { return group[a] < group[b]; });

    std::vector<std::size_t> cur(ante.size());
    std::iota(cur.begin(), cur.end(), 0);
    Arranged out;
    auto formulas = [&]() {
      Items f;
      for (std::size_t id : cur) f.push_back(ante[id]);
      return f;
    };
    for (std::size_t t = 0; t < cur.size(); ++t) {
      while (cur[t] != target[t]) {
        const std::size_t j = static_cast<std::size_t>(
            std::find(cur.begin() + t, cur.end(), target[t]) - cur.begin());
        if (ante[target[t]].f.is_bang()) {
          out.chain.push_back(node(formulas(), goal, Rule::kPerm1, {t, j - t}));
          const std::size_t moved = cur[j];
          cur.erase(cur.begin() + j);
          cur.insert(cur.begin() + t, moved);
        } else {
          if (!ante[cur[t]].f.is_bang()) {
            throw std::logic_error("arrangement would reorder non-! formulas");
          }
          out.chain.push_back(node(formulas(), goal, Rule::kPerm2, {t, j - t}));
          const std::size_t moved = cur[t];
          cur.erase(cur.begin() + t);
          cur.insert(cur.begin() + j, moved);
        }
      }
    }
    out.ante = formulas();
    out.where.assign(ante.size(), 0);
    for (std::size_t i = 0; i < cur.size(); ++i) out.where[cur[i]] = i;
    return out;
  }

  Derivation realize_left(const AStep& s, const Items& ante, const Formula& goal,
                          const View& v) {
    const bool under = s.kind == StepKind::kUnderL;
    // Skeleton positions (principal excluded) around Γ.
    std::vector<std::size_t> skel = v.skel_pos;
    if (!s.from_pool) skel.erase(skel.begin() + s.principal);
    const std::size_t at = s.from_pool ? s.insert : s.principal;
    const std::size_t lo = under ? at - s.block : at;
    const std::size_t hi = under ? at : at + s.block;

    // Non-crossing copies among equal pool formulas.
    const auto runs = pool_runs(ante, v, s.chosen);
    const std::size_t pivot =
        s.from_pool ? (at < skel.size() ? skel[at] : ante.size())
                    : v.skel_pos[s.principal];
    std::size_t principal = pivot;
    std::vector<std::size_t> gamma_copies, other_copies;
    for (const auto& run : runs) {
      std::vector<std::size_t> copies = run.positions;
      if (s.from_pool && run.first_index == s.principal) {
        std::size_t pick = 0;
        for (std::size_t i = 0; i < copies.size(); ++i) {
          if (copies[i] < pivot) pick = i;
        }
        principal = copies[pick];
        copies.erase(copies.begin() + pick);
      }
      const std::size_t b = static_cast<std::size_t>(std::count_if(
          copies.begin(), copies.end(), [&](std::size_t p) { return p < pivot; }));
      const std::size_t k = run.chosen;
      const std::size_t m = copies.size();
      const std::size_t start = under ? (b >= k ? b - k : 0) : std::min(b, m - k);
      for (std::size_t i = 0; i < m; ++i) {
        (i >= start && i < start + k ? gamma_copies : other_copies)
            .push_back(copies[i]);
      }
    }

    const int before = 0, gamma_group = under ? 1 : 2, fun_group = under ? 2 : 1,
              after = 3;
    std::vector<int> group(ante.size(), after);
    for (std::size_t k = 0; k < skel.size(); ++k) {
      group[skel[k]] = k < lo ? before : (k < hi ? gamma_group : after);
    }
    for (std::size_t p : other_copies) group[p] = p < principal ? before : after;
    for (std::size_t p : gamma_copies) group[p] = gamma_group;
    group[principal] = fun_group;
    const std::size_t gamma_size =
        static_cast<std::size_t>(std::count(group.begin(), group.end(), gamma_group));

    auto [chain, arranged, where] = arrange(ante, goal, group);
    const std::size_t pos = where[principal];
    if (s.from_pool) {
      chain.push_back(node(arranged, goal, Rule::kBangL, {pos}));
      arranged[pos].f = arranged[pos].f.inner();
    }
    const Formula functor = arranged[pos].f;
    Derivation d = node(arranged, goal, under ? Rule::kUnderL : Rule::kOverL,
                        {pos, gamma_size});
    const std::size_t g_lo = under ? pos - gamma_size : pos + 1;
    Items gamma(arranged.begin() + g_lo, arranged.begin() + g_lo + gamma_size);
    std::vector<const Item*> parts{&arranged[pos]};
    for (const auto& item : gamma) parts.push_back(&item);
    const std::string label = join_labels(parts);
    const std::size_t r_lo = under ? pos - gamma_size : pos;
    const std::size_t r_hi = under ? pos + 1 : pos + 1 + gamma_size;
    Items rest(arranged.begin(), arranged.begin() + r_lo);
    rest.push_back(Item{functor.result(), label});
    rest.insert(rest.end(), arranged.begin() + r_hi, arranged.end());
    std::vector<std::size_t> entering;
    if (functor.result().is_bang()) entering.push_back(r_lo);

    d.premises = {realize(*s.premises[0], std::move(gamma), functor.argument()),
                  enter(*s.premises[1], std::move(rest), goal, entering, s.mult)};
    return wrap(std::move(chain), std::move(d));
  }

  // Contr nodes for formulas entering the pool at `positions`, then the step.
  Derivation enter(const AStep& s, Items ante, const Formula& goal,
                   std::vector<std::size_t> positions,
                   const std::vector<std::size_t>& mult) {
    std::vector<Derivation> chain;
    for (std::size_t k = positions.size(); k-- > 0;) {
      const std::size_t pos = positions[k];
      const std::size_t copies = k < mult.size() ? mult[k] : 1;
      for (std::size_t m = 1; m < copies; ++m) {
        chain.push_back(node(ante, goal, Rule::kContr, {pos}));
        ante.insert(ante.begin() + pos, ante[pos]);
      }
    }
    return wrap(std::move(chain), realize(s, std::move(ante), goal));
  }

 public:
  Derivation root(const RootProof& proof, const Sequent& sequent) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < sequent.antecedent.size(); ++i) {
      if (sequent.antecedent[i].is_bang()) positions.push_back(i);
    }
    Items ante;
    for (std::size_t i = 0; i < sequent.antecedent.size(); ++i) {
      ante.push_back(Item{sequent.antecedent[i], std::to_string(i)});
    }
    return enter(*proof.body, std::move(ante), sequent.goal, positions, proof.mult);
  }
};

}  // namespace

void SearchConfig::validate() const {
  if (max_depth == 0) throw std::invalid_argument("max_depth must be positive");
  if (contraction_budget == 0) throw std::invalid_argument("contraction_budget must be positive");
  if (max_solutions == 0) throw std::invalid_argument("max_solutions must be positive");
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
}

std::size_t count_bangs(const Sequent& sequent) {
  std::size_t n = bangs_in(sequent.goal);
  for (const auto& f : sequent.antecedent) n += bangs_in(f);
  return n;
}

std::vector<Derivation> prove(const Sequent& sequent, const SearchConfig& cfg,
                              SearchStats* stats) {
  cfg.validate();
  std::size_t max_c = cfg.contraction_budget * count_bangs(sequent);
  if (cfg.max_contractions) max_c = std::min(max_c, *cfg.max_contractions);

  const auto deadline = Clock::now() + cfg.timeout;
  std::vector<Derivation> out;
  std::unordered_set<std::string> seen;
  SearchStats total;
  Realizer realizer;
  for (std::size_t c = cfg.min_contractions; c <= max_c && out.size() < cfg.max_solutions;
       ++c) {
    // Abstract proofs that realize too deep are dropped, so ask for more
    // until the level is exhausted or enough survive.
    std::size_t want = cfg.max_solutions - out.size();
    std::vector<Derivation> level;
    while (true) {
      SearchConfig local = cfg;
      local.max_solutions = want;
      local.timeout = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - Clock::now());
      if (local.timeout.count() <= 0) throw SearchTimeout();
      Searcher searcher(sequent, local);
      const auto proofs = searcher.solve_root(sequent, c);
      total.states += searcher.stats().states;
      total.memo_hits += searcher.stats().memo_hits;
      level.clear();
      for (const auto& proof : proofs) {
        Derivation d = realizer.root(proof, sequent);
        const CheckResult check = check_derivation(d);
        if (!check.ok) {
          throw std::logic_error("prover built an invalid derivation: " + check.reason);
        }
        if (derivation_depth(d) > cfg.max_depth) continue;
        level.push_back(std::move(d));
      }
      const std::size_t need = cfg.max_solutions - out.size();
      if (proofs.size() < want || level.size() >= need) break;
      want *= 4;
    }
    for (auto& d : level) {
      if (out.size() >= cfg.max_solutions) break;
      if (!seen.insert(format_derivation(d)).second) continue;
      out.push_back(std::move(d));
    }
  }
  total.max_contractions = max_c;
  if (stats) *stats = total;
  return out;
}

}  // namespace bangl
