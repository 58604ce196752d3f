#include "bangl/derivation.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>
#include <variant>

#include "json.hpp"

namespace bangl {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 12> kRuleNames{{
    {Rule::kAx, "Ax"},
    {Rule::kOverL, "OverL"},
    {Rule::kOverR, "OverR"},
    {Rule::kUnderL, "UnderL"},
    {Rule::kUnderR, "UnderR"},
    {Rule::kBangL, "BangL"},
    {Rule::kBangR, "BangR"},
    {Rule::kPerm1, "Perm1"},
    {Rule::kPerm2, "Perm2"},
    {Rule::kContr, "Contr"},
    {Rule::kProdL, "ProdL"},
    {Rule::kProdR, "ProdR"},
}};

using Formulas = std::vector<Formula>;

Formulas slice(const Formulas& v, std::size_t from, std::size_t to) {
  return Formulas(v.begin() + from, v.begin() + to);
}

Formulas concat(std::initializer_list<Formulas> parts) {
  Formulas out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Expected premise sequents for a node, or an error message.
std::variant<std::vector<Sequent>, std::string> expected_premises(
    const Derivation& d) {
  const Formulas& ante = d.conclusion.antecedent;
  const Formula& goal = d.conclusion.goal;
  const std::size_t n = ante.size();
  const auto& data = d.data;
  auto need_data = [&](std::size_t k) { return data.size() == k; };

  switch (d.rule) {
    case Rule::kAx:
      if (!need_data(0)) return std::string("Ax takes no data");
      if (n != 1 || ante[0] != goal) return std::string("axiom must be A -> A");
      return std::vector<Sequent>{};

    case Rule::kUnderL: {
      if (!need_data(2)) return std::string("UnderL needs [p, g]");
      const std::size_t p = data[0], g = data[1];
      if (p >= n || ante[p].kind() != Formula::Kind::kUnder) {
        return std::string("UnderL position does not hold A\\B");
      }
      if (g > p) return std::string("UnderL context runs off the left");
      const Formula& f = ante[p];
      return std::vector<Sequent>{
          {slice(ante, p - g, p), f.argument()},
          {concat({slice(ante, 0, p - g), {f.result()}, slice(ante, p + 1, n)}),
           goal}};
    }

    case Rule::kOverL: {
      if (!need_data(2)) return std::string("OverL needs [p, g]");
      const std::size_t p = data[0], g = data[1];
      if (p >= n || ante[p].kind() != Formula::Kind::kOver) {
        return std::string("OverL position does not hold B/A");
      }
      if (p + g >= n) return std::string("OverL context runs off the right");
      const Formula& f = ante[p];
      return std::vector<Sequent>{
          {slice(ante, p + 1, p + 1 + g), f.argument()},
          {concat({slice(ante, 0, p), {f.result()}, slice(ante, p + 1 + g, n)}),
           goal}};
    }

    case Rule::kUnderR:
      if (!need_data(0)) return std::string("UnderR takes no data");
      if (goal.kind() != Formula::Kind::kUnder) {
        return std::string("UnderR goal is not A\\B");
      }
      return std::vector<Sequent>{
          {concat({{goal.argument()}, ante}), goal.result()}};

    case Rule::kOverR:
      if (!need_data(0)) return std::string("OverR takes no data");
      if (goal.kind() != Formula::Kind::kOver) {
        return std::string("OverR goal is not B/A");
      }
      return std::vector<Sequent>{
          {concat({ante, {goal.argument()}}), goal.result()}};

    case Rule::kBangL: {
      if (!need_data(1)) return std::string("BangL needs [p]");
      const std::size_t p = data[0];
      if (p >= n || !ante[p].is_bang()) {
        return std::string("BangL position does not hold !A");
      }
      Formulas prem = ante;
      prem[p] = ante[p].inner();
      return std::vector<Sequent>{{std::move(prem), goal}};
    }

    case Rule::kBangR:
      if (!need_data(0)) return std::string("BangR takes no data");
      if (!goal.is_bang()) return std::string("BangR goal is not !B");
      for (const auto& f : ante) {
        if (!f.is_bang()) {
          return std::string("BangR needs every antecedent formula banged");
        }
      }
      return std::vector<Sequent>{{ante, goal.inner()}};

    case Rule::kContr: {
      if (!need_data(1)) return std::string("Contr needs [p]");
      const std::size_t p = data[0];
      if (p >= n || !ante[p].is_bang()) {
        return std::string("Contr position does not hold !A");
      }
      Formulas prem = ante;
      prem.insert(prem.begin() + p, ante[p]);
      return std::vector<Sequent>{{std::move(prem), goal}};
    }

    case Rule::kPerm2: {
      if (!need_data(2)) return std::string("Perm2 needs [i, g]");
      const std::size_t i = data[0], g = data[1];
      if (g == 0) return std::string("Perm2 moves across an empty block");
      if (i + g >= n) return std::string("Perm2 block runs off the right");
      if (!ante[i].is_bang()) return std::string("Perm2 moves a non-! formula");
      return std::vector<Sequent>{
          {concat({slice(ante, 0, i), slice(ante, i + 1, i + g + 1), {ante[i]},
                   slice(ante, i + g + 1, n)}),
           goal}};
    }

    case Rule::kPerm1: {
      if (!need_data(2)) return std::string("Perm1 needs [i, g]");
      const std::size_t i = data[0], g = data[1];
      if (g == 0) return std::string("Perm1 moves across an empty block");
      if (i + g >= n) return std::string("Perm1 block runs off the right");
      if (!ante[i + g].is_bang()) {
        return std::string("Perm1 moves a non-! formula");
      }
      return std::vector<Sequent>{
          {concat({slice(ante, 0, i), {ante[i + g]}, slice(ante, i, i + g),
                   slice(ante, i + g + 1, n)}),
           goal}};
    }

    case Rule::kProdL: {
      if (!need_data(1)) return std::string("ProdL needs [p]");
      const std::size_t p = data[0];
      if (p >= n || !ante[p].is_product()) {
        return std::string("ProdL position does not hold (A,B)");
      }
      return std::vector<Sequent>{
          {concat({slice(ante, 0, p), {ante[p].left(), ante[p].right()},
                   slice(ante, p + 1, n)}),
           goal}};
    }

    case Rule::kProdR: {
      if (!need_data(1)) return std::string("ProdR needs [k]");
      const std::size_t k = data[0];
      if (!goal.is_product()) return std::string("ProdR goal is not (A,B)");
      if (k > n) return std::string("ProdR split past the end");
      return std::vector<Sequent>{{slice(ante, 0, k), goal.left()},
                                  {slice(ante, k, n), goal.right()}};
    }
  }
  return std::string("unknown rule");
}

void check_node(const Derivation& d, std::vector<std::size_t>& path,
                CheckResult& result) {
  auto expected = expected_premises(d);
  if (auto* err = std::get_if<std::string>(&expected)) {
    result = CheckResult{false, path, *err};
    return;
  }
  const auto& want = std::get<std::vector<Sequent>>(expected);
  if (want.size() != d.premises.size()) {
    result = CheckResult{false, path,
                         std::string(rule_name(d.rule)) + " expects " +
                             std::to_string(want.size()) + " premises, found " +
                             std::to_string(d.premises.size())};
    return;
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (d.premises[i].conclusion != want[i]) {
      result = CheckResult{false, path,
                           std::string(rule_name(d.rule)) + " premise " +
                               std::to_string(i) + " should be '" +
                               format_sequent(want[i]) + "' but is '" +
                               format_sequent(d.premises[i].conclusion) + "'"};
      return;
    }
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(i);
    check_node(d.premises[i], path, result);
    if (!result.ok) return;
    path.pop_back();
  }
}

void format_node(const Derivation& d, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += rule_name(d.rule);
  out += ' ';
  out += format_sequent(d.conclusion);
  if (!d.data.empty()) {
    out += " [";
    for (std::size_t i = 0; i < d.data.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(d.data[i]);
    }
    out += ']';
  }
  out += '\n';
  for (const auto& p : d.premises) format_node(p, indent + 1, out);
}

nlohmann::json to_json(const Derivation& d) {
  nlohmann::json j;
  j["rule"] = std::string(rule_name(d.rule));
  j["conclusion"] = format_sequent(d.conclusion);
  j["data"] = d.data;
  j["premises"] = nlohmann::json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(p));
  return j;
}

}  // namespace

std::string_view rule_name(Rule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

CheckResult check_derivation(const Derivation& d) {
  CheckResult result;
  std::vector<std::size_t> path;
  check_node(d, path, result);
  return result;
}

std::size_t count_rule(const Derivation& d, Rule rule) {
  std::size_t n = d.rule == rule ? 1 : 0;
  for (const auto& p : d.premises) n += count_rule(p, rule);
  return n;
}

std::size_t derivation_depth(const Derivation& d) {
  std::size_t deepest = 0;
  for (const auto& p : d.premises) {
    deepest = std::max(deepest, derivation_depth(p));
  }
  return deepest + 1;
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += derivation_size(p);
  return n;
}

std::string format_derivation(const Derivation& d) {
  std::string out;
  format_node(d, 0, out);
  return out;
}

Derivation parse_derivation(std::string_view text, const AtomSet& atoms) {
  struct Pending {
    std::size_t indent;
    Derivation node;
  };
  std::vector<Pending> stack;
  std::optional<Derivation> root;

  auto close_until = [&](std::size_t indent) {
    while (!stack.empty() && stack.back().indent >= indent) {
      Pending done = std::move(stack.back());
      stack.pop_back();
      if (stack.empty()) {
        if (root) throw ParseError("more than one root node", 0);
        root = std::move(done.node);
      } else {
        stack.back().node.premises.push_back(std::move(done.node));
      }
    }
  };

  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    std::string_view body = line.substr(indent);
    if (!body.empty() && body.front() != '#') {
      if (indent % 2 != 0) throw ParseError("odd indentation", line_start);
      const std::size_t depth = indent / 2;
      if (!stack.empty() && depth > stack.back().indent + 1) {
        throw ParseError("indentation jumps more than one level", line_start);
      }
      if (stack.empty() && depth != 0) {
        throw ParseError("first node must not be indented", line_start);
      }

      const std::size_t space = body.find(' ');
      if (space == std::string_view::npos) {
        throw ParseError("expected '<rule> <sequent>'", line_start + indent);
      }
      auto rule = rule_from_name(body.substr(0, space));
      if (!rule) {
        throw ParseError("unknown rule '" + std::string(body.substr(0, space)) +
                             "'",
                         line_start + indent);
      }
      std::string_view rest = body.substr(space + 1);
      Derivation node;
      node.rule = *rule;
      const std::size_t bracket = rest.rfind('[');
      if (bracket != std::string_view::npos) {
        std::string_view list = rest.substr(bracket + 1);
        const std::size_t close = list.find(']');
        if (close == std::string_view::npos) {
          throw ParseError("unterminated rule data", line_start + indent);
        }
        std::string items(list.substr(0, close));
        std::replace(items.begin(), items.end(), ',', ' ');
        std::istringstream in(items);
        std::size_t v;
        while (in >> v) node.data.push_back(v);
        rest = rest.substr(0, bracket);
      }
      try {
        node.conclusion = parse_sequent(rest, atoms);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_start + indent + space + 1 + e.offset());
      }

      close_until(depth);
      stack.push_back(Pending{depth, std::move(node)});
    }
    line_start = line_end + 1;
  }
  close_until(0);
  if (!root) throw ParseError("empty derivation", 0);
  return std::move(*root);
}

std::string derivation_to_json(const Derivation& d, int indent) {
  return to_json(d).dump(indent);
}

}  // namespace bangl
