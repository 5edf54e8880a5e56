#include "cfol/semantics.hpp"

#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cfol {

PreStructure::PreStructure(Signature sig, std::vector<std::string> carrier)
    : sig_(std::move(sig)), carrier_(std::move(carrier)) {
  if (carrier_.empty()) throw std::invalid_argument("PreStructure: empty carrier");
  for (std::size_t i = 0; i < carrier_.size(); ++i)
    if (!index_.emplace(carrier_[i], i).second)
      throw std::invalid_argument("PreStructure: duplicate element '" + carrier_[i] + "'");
  for (const auto& [name, info] : sig_.functions())
    fun_tables_[name].assign(table_size(info.arity), std::nullopt);
  for (const auto& [name, info] : sig_.relations())
    if (name != Signature::kMetricSymbol) rel_tables_[name].assign(table_size(info.arity), std::nullopt);
  if (sig_.has_metric()) {
    metric_.assign(carrier_.size() * carrier_.size(), std::nullopt);
    for (std::size_t i = 0; i < carrier_.size(); ++i) metric_[i * carrier_.size() + i] = Rational(0);
  }
}

std::optional<std::size_t> PreStructure::element_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PreStructure::table_size(std::size_t arity) const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= carrier_.size();
  return n;
}

std::size_t PreStructure::table_index(const std::vector<std::size_t>& args) const {
  std::size_t ix = 0;
  for (std::size_t a : args) {
    if (a >= carrier_.size()) throw std::out_of_range("PreStructure: element index out of range");
    ix = ix * carrier_.size() + a;
  }
  return ix;
}

void PreStructure::set_fun(const Symbol& f, const std::vector<std::size_t>& args, std::size_t value) {
  auto it = fun_tables_.find(f);
  if (it == fun_tables_.end()) throw std::out_of_range("PreStructure: unknown function '" + f + "'");
  if (args.size() != sig_.function(f).arity) throw std::invalid_argument("PreStructure: arity mismatch");
  if (value >= carrier_.size()) throw std::out_of_range("PreStructure: function value out of range");
  it->second[table_index(args)] = value;
}

void PreStructure::set_rel(const Symbol& r, const std::vector<std::size_t>& args, Rational value) {
  auto it = rel_tables_.find(r);
  if (it == rel_tables_.end()) throw std::out_of_range("PreStructure: unknown relation '" + r + "'");
  if (args.size() != sig_.relation(r).arity) throw std::invalid_argument("PreStructure: arity mismatch");
  it->second[table_index(args)] = std::move(value);
}

void PreStructure::set_dist(std::size_t a, std::size_t b, Rational value) {
  if (!sig_.has_metric()) throw std::logic_error("PreStructure: signature has no metric");
  if (a >= carrier_.size() || b >= carrier_.size()) throw std::out_of_range("PreStructure: element out of range");
  metric_[a * carrier_.size() + b] = value;
  metric_[b * carrier_.size() + a] = std::move(value);
}

bool PreStructure::fun_total(const Symbol& f) const {
  const auto& t = fun_tables_.at(f);
  for (const auto& v : t)
    if (!v) return false;
  return true;
}

bool PreStructure::rel_total(const Symbol& r) const {
  if (r == Signature::kMetricSymbol) {
    for (const auto& v : metric_)
      if (!v) return false;
    return true;
  }
  const auto& t = rel_tables_.at(r);
  for (const auto& v : t)
    if (!v) return false;
  return true;
}

std::size_t PreStructure::fun_value(const Symbol& f, const std::vector<std::size_t>& args) const {
  const auto& v = fun_tables_.at(f).at(table_index(args));
  if (!v) throw std::logic_error("PreStructure: missing function table entry for '" + f + "'");
  return *v;
}

const Rational& PreStructure::rel_value(const Symbol& r, const std::vector<std::size_t>& args) const {
  if (r == Signature::kMetricSymbol) return dist(args.at(0), args.at(1));
  const auto& v = rel_tables_.at(r).at(table_index(args));
  if (!v) throw std::logic_error("PreStructure: missing relation table entry for '" + r + "'");
  return *v;
}

const Rational& PreStructure::dist(std::size_t a, std::size_t b) const {
  const auto& v = metric_.at(a * carrier_.size() + b);
  if (!v) throw std::logic_error("PreStructure: missing metric table entry");
  return *v;
}

void PreStructure::add_named_constant(const Symbol& name, std::size_t element) {
  if (element >= carrier_.size()) throw std::out_of_range("PreStructure: element out of range");
  sig_.add_function(name, 0);
  fun_tables_[name] = {element};
}

bool Morphism::surjective(std::size_t target_size) const {
  std::vector<bool> hit(target_size, false);
  for (std::size_t v : map) hit.at(v) = true;
  for (bool b : hit)
    if (!b) return false;
  return true;
}

std::optional<std::string> Morphism::check(const PreStructure& source, const PreStructure& target) const {
  if (map.size() != source.size()) return std::string("morphism: shape mismatch");
  const auto& sig = source.sig();
  std::optional<std::string> fail;
  auto for_tuples = [&](std::size_t arity, auto&& fn) {
    std::vector<std::size_t> args(arity, 0);
    while (!fail) {
      fn(args);
      std::size_t i = arity;
      while (i > 0) {
        if (++args[i - 1] < source.size()) break;
        args[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  };
  for (const auto& [f, info] : sig.functions()) {
    for_tuples(info.arity, [&](const std::vector<std::size_t>& args) {
      std::vector<std::size_t> mapped(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) mapped[i] = map[args[i]];
      if (map[source.fun_value(f, args)] != target.fun_value(f, mapped))
        fail = "morphism: function '" + f + "' does not commute";
    });
  }
  for (const auto& [r, info] : sig.relations()) {
    if (r == Signature::kMetricSymbol) continue;
    for_tuples(info.arity, [&](const std::vector<std::size_t>& args) {
      std::vector<std::size_t> mapped(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) mapped[i] = map[args[i]];
      if (!(source.rel_value(r, args) == target.rel_value(r, mapped)))
        fail = "morphism: relation '" + r + "' not preserved";
    });
  }
  if (sig.has_metric())
    for (std::size_t a = 0; a < source.size() && !fail; ++a)
      for (std::size_t b = 0; b < source.size() && !fail; ++b)
        if (!(source.dist(a, b) == target.dist(map[a], map[b]))) fail = "morphism: metric not preserved";
  return fail;
}

std::string ValidationReport::text() const {
  if (ok()) return "valid\n";
  std::ostringstream os;
  for (const auto& v : violations) os << v.kind << ": " << v.detail << "\n";
  return os.str();
}

std::string ValidationReport::machine() const {
  std::ostringstream os;
  for (const auto& v : violations) os << "VIOLATION " << v.kind << " " << v.detail << "\n";
  return os.str();
}

std::size_t eval_term(const PreStructure& m, const Assignment& sigma, const Term& t) {
  if (t.is_var()) {
    std::size_t a = sigma.get(t.var_name());
    if (a >= m.size()) throw std::out_of_range("eval_term: assignment outside carrier");
    return a;
  }
  std::vector<std::size_t> args;
  args.reserve(t.args().size());
  for (const auto& s : t.args()) args.push_back(eval_term(m, sigma, s));
  return m.fun_value(t.fn(), args);
}

Rational eval(const PreStructure& m, const Assignment& sigma, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<std::size_t> args;
      args.reserve(f.terms().size());
      for (const auto& t : f.terms()) args.push_back(eval_term(m, sigma, t));
      return m.rel_value(f.rel(), args);
    }
    case FormulaKind::Metric:
      return m.dist(eval_term(m, sigma, f.terms()[0]), eval_term(m, sigma, f.terms()[1]));
    case FormulaKind::Const:
      return f.value().value();
    case FormulaKind::Monus:
      return truncated_sub(eval(m, sigma, f.lhs()), eval(m, sigma, f.rhs()));
    case FormulaKind::Neg:
      return Rational(1) - eval(m, sigma, f.child());
    case FormulaKind::Half:
      return eval(m, sigma, f.child()) / Rational(2);
    case FormulaKind::Sup: {
      Rational best = eval(m, sigma.with(f.bound_var(), 0), f.child());
      for (std::size_t a = 1; a < m.size(); ++a)
        best = max(best, eval(m, sigma.with(f.bound_var(), a), f.child()));
      return best;
    }
    default:
      throw std::invalid_argument("eval: derived connectives must be expanded first");
  }
}

bool models(const PreStructure& m, const Assignment& sigma, const std::vector<Formula>& gamma) {
  for (const auto& f : gamma)
    if (!eval(m, sigma, f).is_zero()) return false;
  return true;
}

namespace {

void for_each_tuple(std::size_t arity, std::size_t base, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> args(arity, 0);
  while (true) {
    fn(args);
    std::size_t i = arity;
    while (i > 0) {
      if (++args[i - 1] < base) break;
      args[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
}

std::string tuple_names(const PreStructure& m, const std::vector<std::size_t>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += m.element_name(args[i]);
  }
  return out + ")";
}

}  // namespace

ValidationReport validate(const PreStructure& m) {
  ValidationReport rep;
  const auto& sig = m.sig();
  const std::size_t n = m.size();

  for (const auto& [f, info] : sig.functions())
    if (!m.fun_total(f)) rep.violations.push_back({"totality", "function " + f + " has missing entries"});
  for (const auto& [r, info] : sig.relations())
    if (!m.rel_total(r)) rep.violations.push_back({"totality", "relation " + r + " has missing entries"});
  if (!rep.ok()) return rep;  // later checks need total tables

  for (const auto& [r, info] : sig.relations()) {
    if (r == Signature::kMetricSymbol) continue;
    for_each_tuple(info.arity, n, [&](const std::vector<std::size_t>& args) {
      if (!m.rel_value(r, args).in_unit())
        rep.violations.push_back({"range", r + tuple_names(m, args) + " outside [0,1]"});
    });
  }

  if (sig.has_metric()) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!m.dist(a, a).is_zero())
        rep.violations.push_back({"diagonal", "d(" + m.element_name(a) + "," + m.element_name(a) + ") != 0"});
      for (std::size_t b = 0; b < n; ++b) {
        if (!m.dist(a, b).in_unit())
          rep.violations.push_back({"range", "d" + tuple_names(m, {a, b}) + " outside [0,1]"});
        if (!(m.dist(a, b) == m.dist(b, a)))
          rep.violations.push_back({"symmetry", "d" + tuple_names(m, {a, b}) + " != d" + tuple_names(m, {b, a})});
        for (std::size_t c = 0; c < n; ++c)
          if (m.dist(a, c) > m.dist(a, b) + m.dist(b, c))
            rep.violations.push_back(
                {"triangle", "d" + tuple_names(m, {a, c}) + " > d" + tuple_names(m, {a, b}) + " + d" + tuple_names(m, {b, c})});
      }
    }
    if (!rep.ok()) return rep;

    // Moduli conditions: for symbol s, argument i and elements c, e, every
    // value difference must stay within the residual bound
    // eps*(c,e) = inf{eps : delta_{s,i}(eps) > d(c,e)}. Checking all ordered
    // pairs makes the one-sided bound two-sided.
    auto check_symbol = [&](const Symbol& s, const Signature::SymbolInfo& info, bool is_fun) {
      for (std::size_t i = 0; i < info.arity; ++i) {
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t e = 0; e < n; ++e) {
            if (c == e) continue;
            auto bound = info.moduli[i].first_exceed(m.dist(c, e));
            if (!bound) continue;  // modulus never exceeds this distance: no constraint
            for_each_tuple(info.arity - 1, n, [&](const std::vector<std::size_t>& rest) {
              std::vector<std::size_t> left(rest.begin(), rest.begin() + i);
              std::vector<std::size_t> right(rest.begin() + i, rest.end());
              std::vector<std::size_t> ac = left, ae = left;
              ac.push_back(c);
              ae.push_back(e);
              ac.insert(ac.end(), right.begin(), right.end());
              ae.insert(ae.end(), right.begin(), right.end());
              Rational diff = is_fun ? m.dist(m.fun_value(s, ac), m.fun_value(s, ae))
                                     : truncated_sub(m.rel_value(s, ac), m.rel_value(s, ae));
              if (diff > *bound)
                rep.violations.push_back({"modulus", s + " argument " + std::to_string(i) + " at " +
                                                         tuple_names(m, ac) + " vs " + tuple_names(m, ae) +
                                                         ": difference " + diff.str() + " exceeds " + bound->str()});
            });
          }
      }
    };
    for (const auto& [r, info] : sig.relations()) check_symbol(r, info, false);
    for (const auto& [f, info] : sig.functions()) check_symbol(f, info, true);
  }
  return rep;
}

std::pair<PreStructure, Morphism> quotient_completion(const PreStructure& m) {
  ValidationReport rep = validate(m);
  if (!rep.ok()) throw std::invalid_argument("quotient_completion: input does not validate:\n" + rep.text());

  const std::size_t n = m.size();
  if (!m.sig().has_metric()) {
    Morphism id;
    id.map.resize(n);
    for (std::size_t i = 0; i < n; ++i) id.map[i] = i;
    return {m, std::move(id)};
  }

  // Distance-0 is an equivalence relation (triangle inequality); collapse each
  // class to its least-index representative.
  std::vector<std::size_t> rep_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep_of[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (m.dist(i, j).is_zero()) {
        rep_of[i] = rep_of[j];
        break;
      }
  }
  std::vector<std::size_t> reps;
  std::vector<std::size_t> new_index(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (rep_of[i] == i) {
      new_index[i] = reps.size();
      reps.push_back(i);
    }
  for (std::size_t i = 0; i < n; ++i) new_index[i] = new_index[rep_of[i]];

  std::vector<std::string> carrier;
  carrier.reserve(reps.size());
  for (std::size_t r : reps) carrier.push_back(m.element_name(r));
  PreStructure q(m.sig(), std::move(carrier));

  for (const auto& [f, info] : m.sig().functions()) {
    for_each_tuple(info.arity, reps.size(), [&](const std::vector<std::size_t>& args) {
      std::vector<std::size_t> lifted(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) lifted[i] = reps[args[i]];
      q.set_fun(f, args, new_index[m.fun_value(f, lifted)]);
    });
  }
  for (const auto& [r, info] : m.sig().relations()) {
    if (r == Signature::kMetricSymbol) continue;
    for_each_tuple(info.arity, reps.size(), [&](const std::vector<std::size_t>& args) {
      std::vector<std::size_t> lifted(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) lifted[i] = reps[args[i]];
      q.set_rel(r, args, m.rel_value(r, lifted));
    });
  }
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) q.set_dist(a, b, m.dist(reps[a], reps[b]));

  Morphism h{std::move(new_index)};
  return {std::move(q), std::move(h)};
}

}  // namespace cfol
