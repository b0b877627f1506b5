#include "bobw/json_io.hpp"

#include <fstream>

#include "bobw/error.hpp"
#include "bobw/fixtures.hpp"

namespace bobw {

namespace {

GoodSet good_set_from_json(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of good indices");
  GoodSet s;
  for (const auto& g : j) {
    if (!g.is_number_integer()) throw PreconditionError("good index must be an integer");
    s.push_back(g.get<int>());
  }
  GoodSet sorted = normalized(s);
  if (sorted.size() != s.size()) throw PreconditionError("duplicate good index in a set");
  return sorted;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  if (j.is_number_unsigned()) return Rational(BigInt(std::to_string(j.get<unsigned long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw PreconditionError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.n = field(j, "n").get<int>();
  inst.m = field(j, "m").get<int>();
  if (j.contains("labels")) inst.labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("epsilon") && !j.at("epsilon").is_null()) inst.epsilon = rational_from_json(j.at("epsilon"));
  for (const auto& v : field(j, "valuations")) {
    const std::string kind = field(v, "kind").get<std::string>();
    if (kind == "additive") {
      std::vector<Rational> vals;
      for (const auto& x : field(v, "values")) vals.push_back(rational_from_json(x));
      inst.valuations.push_back(Valuation::additive(std::move(vals)));
    } else if (kind == "lexicographic") {
      inst.valuations.push_back(Valuation::lexicographic(field(v, "ranking").get<std::vector<int>>()));
    } else if (kind == "table") {
      inst.valuations.push_back(Valuation::table_of(field(v, "values").get<std::vector<std::int64_t>>(),
                                                    v.value("subadditive", false)));
    } else {
      throw PreconditionError("unknown valuation kind '" + kind + "'");
    }
  }
  return inst;
}

json to_json(const Instance& inst) {
  json vals = json::array();
  for (const auto& v : inst.valuations) {
    switch (v.kind) {
      case ValuationKind::Additive: {
        json xs = json::array();
        for (const auto& x : v.values) xs.push_back(is_integer(x) ? json(x.get_num().get_si()) : json(to_string(x)));
        vals.push_back({{"kind", "additive"}, {"values", xs}});
        break;
      }
      case ValuationKind::Lexicographic:
        vals.push_back({{"kind", "lexicographic"}, {"ranking", v.ranking}});
        break;
      case ValuationKind::Table: {
        json t = {{"kind", "table"}, {"values", v.table}};
        if (v.subadditive) t["subadditive"] = true;
        vals.push_back(t);
        break;
      }
    }
  }
  json out = {{"n", inst.n}, {"m", inst.m}};
  if (!inst.labels.empty()) out["labels"] = inst.labels;
  if (inst.epsilon) out["epsilon"] = to_string(*inst.epsilon);
  out["valuations"] = vals;
  return out;
}

IntegralAllocation allocation_from_json(const json& j) {
  IntegralAllocation a;
  for (const auto& b : field(j, "bundles")) a.bundles.push_back(good_set_from_json(b));
  if (j.contains("pool")) a.pool = good_set_from_json(j.at("pool"));
  return a;
}

json to_json(const IntegralAllocation& a) { return {{"bundles", a.bundles}, {"pool", a.pool}}; }

RandomizedAllocation randomized_from_json(const json& j) {
  std::vector<WeightedAllocation> entries;
  for (const auto& e : field(j, "support"))
    entries.push_back({rational_from_json(field(e, "prob")), allocation_from_json(e)});
  return RandomizedAllocation(std::move(entries));
}

json to_json(const RandomizedAllocation& d) {
  json support = json::array();
  for (const auto& e : d.support()) {
    json entry = to_json(e.alloc);
    entry["prob"] = to_string(e.prob);
    support.push_back(entry);
  }
  return {{"support", support}};
}

Matrix matrix_from_json(const json& j) {
  Matrix x;
  for (const auto& row : j) {
    auto& r = x.emplace_back();
    for (const auto& v : row) r.push_back(rational_from_json(v));
  }
  return x;
}

json matrix_to_json(const Matrix& x) {
  json out = json::array();
  for (const auto& row : x) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    out.push_back(r);
  }
  return out;
}

json to_json(const EatingTrace& t) {
  json agents = json::array();
  for (const auto& segs : t.segments) {
    json a = json::array();
    for (const auto& s : segs) a.push_back({{"good", s.good}, {"start", to_string(s.start)}, {"end", to_string(s.end)}});
    agents.push_back(a);
  }
  json out = {{"n", t.n}, {"m", t.real_m}, {"duration", to_string(t.duration)}, {"segments", agents}};
  if (t.m != t.real_m) out["dummy_goods"] = t.m - t.real_m;
  return out;
}

json to_json(const TraceSummary& s) {
  json out = {{"X", matrix_to_json(s.X)},  {"last_goods", s.last_goods},           {"L", s.L},
              {"U", s.U},                  {"last_mass", to_string(s.last_mass)}};
  json eaten = json::array();
  for (const auto& q : s.eaten) eaten.push_back(to_string(q));
  out["eaten"] = eaten;
  if (s.k) out["k"] = *s.k;
  return out;
}

Decomposition decomposition_from_json(const json& j, int rows, int cols) {
  Decomposition d;
  d.rows = rows;
  d.cols = cols;
  for (const auto& e : field(j, "support")) {
    DecompositionTerm t;
    t.weight = rational_from_json(field(e, "prob"));
    for (const auto& b : field(e, "bundles")) {
      GoodSet s = good_set_from_json(b);
      if (s.size() != 1) throw PreconditionError("decomposition bundles must be singletons");
      t.column_of_row.push_back(s[0]);
    }
    d.terms.push_back(std::move(t));
  }
  return d;
}

json to_json(const Decomposition& d) {
  json support = json::array();
  for (const auto& t : d.terms) {
    json bundles = json::array();
    std::vector<char> used(d.cols, 0);
    for (int c : t.column_of_row) {
      bundles.push_back(json::array({c}));
      used[c] = 1;
    }
    GoodSet pool;
    for (int c = 0; c < d.cols; ++c)
      if (!used[c]) pool.push_back(c);
    support.push_back({{"prob", to_string(t.weight)}, {"bundles", bundles}, {"pool", pool}});
  }
  return {{"support", support}};
}

json to_json(const SwapTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back({{"Q", s.Q}, {"H", s.H}, {"k", s.k}});
  return {{"steps", steps}, {"final", to_json(t.final_alloc)}};
}

SwapTrace swap_trace_from_json(const json& j) {
  SwapTrace t;
  for (const auto& s : field(j, "steps"))
    t.steps.push_back({good_set_from_json(field(s, "Q")), field(s, "H").get<std::vector<int>>(), field(s, "k").get<int>()});
  t.final_alloc = allocation_from_json(field(j, "final"));
  return t;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Instance load_instance(const std::string& name_or_path, const std::optional<Rational>& epsilon) {
  if (auto fx = fixture_by_name(name_or_path, epsilon)) return *fx;
  try {
    if (epsilon) throw PreconditionError("--epsilon only applies to the parameterized fixtures FIX-B and FIX-C");
    return instance_from_json(read_json_file(name_or_path));
  } catch (const json::exception& e) {
    throw PreconditionError("malformed instance JSON: " + std::string(e.what()));
  }
}

}  // namespace bobw
