#include "ovalsieve/congruence.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <thread>

#include "ovalsieve/error.hpp"

namespace ovalsieve {

const char* status_name(Status s) {
  switch (s) {
    case Status::NoConstraint: return "NoConstraint";
    case Status::HypothesisNotSatisfied: return "HypothesisNotSatisfied";
    case Status::TypeIOnly: return "TypeIOnly";
    case Status::Prohibited: return "Prohibited";
  }
  return "Unknown";
}

int status_rank(Status s) {
  switch (s) {
    case Status::NoConstraint: return 0;
    case Status::HypothesisNotSatisfied: return 1;
    case Status::TypeIOnly: return 2;
    case Status::Prohibited: return 3;
  }
  return 0;
}

void Verdict::add(ClauseCheck check) {
  if (status_rank(check.status) > status_rank(status)) status = check.status;
  checks.push_back(std::move(check));
}

namespace {

long long mod(long long x, long long m) { return ((x % m) + m) % m; }

ClauseCheck residue_check(std::string clause, long long value, std::vector<int> allowed, int modulus,
                          std::string note = {}) {
  ClauseCheck c;
  c.clause = std::move(clause);
  c.modulus = modulus;
  c.value = mod(value, modulus);
  for (int& r : allowed) r = static_cast<int>(mod(r, modulus));
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  c.allowed = std::move(allowed);
  c.note = std::move(note);
  c.status = std::find(c.allowed.begin(), c.allowed.end(), static_cast<int>(c.value)) != c.allowed.end()
                 ? Status::NoConstraint
                 : Status::Prohibited;
  return c;
}

}  // namespace

long long harnack_bound(long long d) {
  if (d < 1) fail(Errc::InvalidInput, "bidegree parameter must be positive");
  return (d - 1) * (d - 1) + 1;
}

CharacteristicNumbers characteristic_numbers(const SphereScheme& s, long long d, int b0_color) {
  if (b0_color != 0 && b0_color != 1) fail(Errc::InvalidInput, "b0_color must be 0 or 1");
  PartLabeling lab = euler_parts(s);
  CharacteristicNumbers cn;
  cn.w_self = d * d - 2 * lab.chi[b0_color];
  cn.w1_self = d * d - lab.chi[1 - b0_color];
  return cn;
}

long long theorem1_general_residue(long long d, long long beta) {
  if (d % 2 == 0) fail(Errc::EvenDegree, "odd bidegree required");
  return mod((d * d + 1) / 2 + beta, 8);
}

Verdict theorem1_verdict(const SphereScheme& s, long long d, CurveType claimed) {
  if (d < 1) fail(Errc::InvalidInput, "bidegree parameter must be positive");
  if (d % 2 == 0) fail(Errc::EvenDegree, "odd bidegree required");
  long long bound = harnack_bound(d);
  int l = s.oval_count();
  if (l > bound) fail(Errc::InvalidInput, "scheme exceeds the Harnack bound");
  long long k = bound - l;
  PartLabeling lab = euler_parts(s);

  Verdict v;
  if (k == 0) {
    // l is odd here, and the required residue is label-symmetric.
    long long target = (d * d + 1) / 2;
    bool ok = mod(lab.chi[0], 8) == mod(target, 8) && mod(lab.chi[1], 8) == mod(target, 8);
    ClauseCheck c = residue_check("t1a", lab.chi[0], {static_cast<int>(mod(target, 8))}, 8,
                                  "parts " + std::to_string(lab.chi[0]) + " and " + std::to_string(lab.chi[1]));
    c.status = ok ? Status::NoConstraint : Status::Prohibited;
    v.add(std::move(c));
  } else if (k == 1) {
    long long t0 = (d * d - 1) / 2;
    v.add(residue_check("t1b", lab.chi_b0(), {static_cast<int>(mod(t0, 8))}, 8,
                        "chi(B1) = " + std::to_string(lab.chi_b1()) + " congruence follows"));
  } else if (k == 2) {
    long long t = (d * d - 7) / 2;
    bool hit = mod(lab.chi[0], 8) == mod(t, 8) || mod(lab.chi[1], 8) == mod(t, 8);
    ClauseCheck c;
    c.clause = "t1c";
    c.modulus = 8;
    c.value = mod(lab.chi[0], 8);
    c.allowed = {static_cast<int>(mod(t, 8))};
    c.status = hit ? Status::TypeIOnly : Status::NoConstraint;
    c.note = hit ? "residue forces type I" : "residue not hit; no constraint";
    v.add(std::move(c));
  } else {
    ClauseCheck c;
    c.clause = "t1";
    c.note = "deficiency k = " + std::to_string(k) + " >= 3: no clause applies";
    v.add(std::move(c));
  }
  if (claimed == CurveType::TypeI) {
    // chi(B0) = chi(B1) = 1 (mod 4); label-free since the parts sum to 2.
    bool ok = mod(lab.chi[0], 4) == 1 && mod(lab.chi[1], 4) == 1;
    ClauseCheck c = residue_check("t1d", lab.chi[0], {1}, 4,
                                  "parts " + std::to_string(lab.chi[0]) + " and " + std::to_string(lab.chi[1]));
    c.status = ok ? Status::NoConstraint : Status::Prohibited;
    v.add(std::move(c));
  }
  return v;
}

Verdict theorem2a_verdict(const SphereScheme& s, long long d) {
  if (d < 1) fail(Errc::InvalidInput, "bidegree parameter must be positive");
  if (d % 2 != 0) fail(Errc::OddDegree, "even bidegree required");
  long long bound = harnack_bound(d);
  if (s.oval_count() != bound)
    fail(Errc::NotMCurve, "theorem applies to M-curves only (l = " + std::to_string(bound) + ")");
  PartLabeling lab = euler_parts(s);
  Verdict v;
  for (long long c : lab.component_chis[1 - lab.b0_index]) {
    if (mod(c, 2) != 0) {
      ClauseCheck check;
      check.clause = "t2a";
      check.status = Status::HypothesisNotSatisfied;
      check.note = "B1 component with odd Euler characteristic (" + std::to_string(c) + ")";
      v.add(std::move(check));
      return v;
    }
  }
  v.add(residue_check("t2a.b0", lab.chi_b0(), {static_cast<int>(mod(d * d, 16))}, 16));
  v.add(residue_check("t2a.b1", lab.chi_b1(), {static_cast<int>(mod(2 - d * d, 16))}, 16,
                      "follows from the B0 congruence"));
  return v;
}

Verdict theorem2b_verdict(const OrientedScheme& o, long long d) {
  if (d < 1) fail(Errc::InvalidInput, "bidegree parameter must be positive");
  if (d % 2 != 0) fail(Errc::OddDegree, "even bidegree required");
  if (o.base.oval_count() % 2 != 0)
    fail(Errc::OddOvalCount, "x(C) needs an even oval count");
  if (static_cast<int>(o.oval_sign.size()) != o.base.oval_count())
    fail(Errc::InvalidInput, "one orientation sign per oval required");
  PartLabeling lab = euler_parts(o.base);
  std::vector<int> xs = x_table(o.base);

  // An orientation of B0 kills all disorienting ovals with x = 1 iff, for
  // each B0 component, its x = 1 boundary ovals all carry the same sign.
  bool hypothesis = true;
  std::map<int, int> forced;
  for (int e = 0; e < o.base.oval_count() && hypothesis; ++e) {
    if (xs[e] == 0) continue;
    auto [a, b] = o.base.edges()[e];
    int region = lab.color[a] == lab.b0_index ? a : b;
    auto [it, inserted] = forced.emplace(region, o.oval_sign[e]);
    if (!inserted && it->second != o.oval_sign[e]) hypothesis = false;
  }

  Verdict v;
  if (!hypothesis) {
    ClauseCheck c;
    c.clause = "t2b";
    c.status = Status::HypothesisNotSatisfied;
    c.note = "every orientation of B0 leaves a disorienting oval with x = 1";
    v.add(std::move(c));
    return v;
  }
  std::string note;
  if (o.base.oval_count() == 0) note = "hypothesis vacuous: no ovals";
  auto c0 = residue_check("t2b.b0", lab.chi_b0(), {static_cast<int>(mod(d * d, 8))}, 8, note);
  v.add(std::move(c0));
  v.add(residue_check("t2b.b1", lab.chi_b1(), {static_cast<int>(mod(2 - d * d, 8))}, 8,
                      "follows from the B0 congruence"));
  return v;
}

namespace {

struct PatternTerm {
  long long count = 0;
  std::string var;  // nonempty for a variable term
  bool is_nest = false;
  std::vector<PatternTerm> children;
};

class PatternParser {
 public:
  explicit PatternParser(const std::string& text) : text_(text) {}

  std::vector<PatternTerm> parse() {
    auto terms = parse_terms();
    if (pos_ != text_.size()) err("unexpected trailing input");
    return terms;
  }

 private:
  std::vector<PatternTerm> parse_terms() {
    std::vector<PatternTerm> terms;
    terms.push_back(parse_term());
    while (pos_ < text_.size() && text_[pos_] == '+') {
      ++pos_;
      terms.push_back(parse_term());
    }
    return terms;
  }

  PatternTerm parse_term() {
    PatternTerm t;
    if (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') {
      t.var = std::string(1, text_[pos_++]);
      return t;  // variables are plain counts, never nest multipliers
    }
    if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9') err("expected a count or variable");
    t.count = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      t.count = t.count * 10 + (text_[pos_] - '0');
      if (t.count > 1000000) fail(Errc::IntegerOverflow, "pattern count too large");
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '<') {
      ++pos_;
      t.is_nest = true;
      t.children = parse_terms();
      if (pos_ >= text_.size() || text_[pos_] != '>') err("expected '>'");
      ++pos_;
    }
    return t;
  }

  [[noreturn]] void err(const std::string& what) {
    fail(Errc::SyntaxError, "pattern error at position " + std::to_string(pos_) + ": " + what);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

struct PatternVar {
  std::string name;
  long long coeff = 1;  // product of enclosing nest multiplicities
  long long min = 0;    // 1 when nested inside angle brackets
};

void collect_pattern(const std::vector<PatternTerm>& terms, long long mult, bool nested,
                     long long& fixed, std::vector<PatternVar>& vars) {
  for (const auto& t : terms) {
    if (!t.var.empty()) {
      for (const auto& v : vars)
        if (v.name == t.var) fail(Errc::InvalidInput, "pattern variable '" + t.var + "' reused");
      vars.push_back({t.var, mult, nested ? 1 : 0});
    } else if (t.is_nest) {
      fixed += mult * t.count;
      if (t.count > 0) collect_pattern(t.children, mult * t.count, true, fixed, vars);
    } else {
      fixed += mult * t.count;
    }
  }
}

std::string instantiate_pattern(const std::vector<PatternTerm>& terms,
                                const std::map<std::string, long long>& values) {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += '+';
    if (!t.var.empty()) {
      out += std::to_string(values.at(t.var));
    } else if (t.is_nest) {
      out += std::to_string(t.count);
      out += '<';
      out += instantiate_pattern(t.children, values);
      out += '>';
    } else {
      out += std::to_string(t.count);
    }
  }
  return out;
}

void sweep_assignments(const std::vector<PatternVar>& vars, std::size_t i, long long remaining,
                       std::map<std::string, long long>& acc,
                       const std::vector<PatternTerm>& terms,
                       std::vector<FamilyInstance>& out) {
  if (i == vars.size()) {
    if (remaining == 0) out.push_back({acc, instantiate_pattern(terms, acc)});
    return;
  }
  const auto& v = vars[i];
  long long rest_min = 0;
  for (std::size_t j = i + 1; j < vars.size(); ++j) rest_min += vars[j].coeff * vars[j].min;
  for (long long value = v.min; v.coeff * value + rest_min <= remaining; ++value) {
    acc[v.name] = value;
    sweep_assignments(vars, i + 1, remaining - v.coeff * value, acc, terms, out);
  }
  acc.erase(v.name);
}

}  // namespace

std::vector<FamilyInstance> family_instances(const std::string& pattern, int total_ovals) {
  auto terms = PatternParser(pattern).parse();
  long long fixed = 0;
  std::vector<PatternVar> vars;
  collect_pattern(terms, 1, false, fixed, vars);
  std::vector<FamilyInstance> out;
  if (fixed > total_ovals) return out;
  std::map<std::string, long long> acc;
  sweep_assignments(vars, 0, total_ovals - fixed, acc, terms, out);
  return out;
}

namespace {

std::vector<std::string> enumerate_with_cache(int l, int cap, const std::optional<std::string>& dir) {
  namespace fs = std::filesystem;
  if (dir) {
    fs::path file = fs::path(*dir) / ("schemes_l" + std::to_string(l) + ".txt");
    if (fs::exists(file)) {
      std::ifstream in(file);
      std::vector<std::string> out;
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
      return out;
    }
  }
  auto out = enumerate_schemes(l, cap);
  if (dir) {
    std::error_code ec;
    fs::create_directories(*dir, ec);
    fs::path file = fs::path(*dir) / ("schemes_l" + std::to_string(l) + ".txt");
    fs::path tmp = file;
    tmp += ".tmp";
    std::ofstream o(tmp);
    for (const auto& s : out) o << s << '\n';
    o.close();
    fs::rename(tmp, file, ec);
  }
  return out;
}

SchemeRow evaluate_row(const std::string& notation, const ClassifyOptions& opt) {
  SphereScheme parsed = parse_scheme(notation);
  // Re-parse the canonical form so the color classes are reported in a
  // notation-independent order.
  SphereScheme s = parse_scheme(parsed.canonical());
  SchemeRow row;
  row.scheme = s.canonical();
  row.l = s.oval_count();
  PartLabeling lab = euler_parts(s);
  if (!lab.ambiguous()) {
    row.chi0 = lab.chi_b0();
    row.chi1 = lab.chi_b1();
    row.b0_determined = true;
  } else {
    row.chi0 = lab.chi[0];
    row.chi1 = lab.chi[1];
  }

  FilterConfig fcfg;
  fcfg.d = static_cast<int>(opt.d);
  fcfg.use_harnack = opt.filter_harnack;
  fcfg.use_bezout_triple = opt.filter_bezout;
  fcfg.max_depth = opt.max_depth;
  fcfg.max_nests = opt.max_nests;
  FilterReport fr = apply_filters(s, fcfg);
  for (const auto& f : fr.failures) {
    ClauseCheck c;
    c.clause = "filter." + f.name;
    c.status = Status::Prohibited;
    c.note = f.witness;
    row.verdict.add(std::move(c));
  }

  long long bound = harnack_bound(opt.d);
  if (row.l <= bound) {
    if (opt.d % 2 == 1) {
      Verdict t1 = theorem1_verdict(s, opt.d, opt.claimed);
      for (auto& c : t1.checks) row.verdict.add(std::move(c));
    } else if (row.l == bound) {
      Verdict t2 = theorem2a_verdict(s, opt.d);
      for (auto& c : t2.checks) row.verdict.add(std::move(c));
    }
  }
  return row;
}

}  // namespace

ClassificationReport classify(const ClassifyOptions& opt) {
  if (opt.d < 1) fail(Errc::InvalidInput, "bidegree parameter must be positive");
  if (opt.workers < 1) fail(Errc::InvalidInput, "worker count must be positive");
  long long bound = harnack_bound(opt.d);
  int l_min = opt.l_min.value_or(0);
  int l_max = opt.l_max.value_or(static_cast<int>(std::min<long long>(bound, opt.enum_cap)));
  if (l_min < 0 || l_max < l_min) fail(Errc::InvalidInput, "bad oval range");

  struct Job {
    std::string notation;
    std::map<std::string, long long> assignment;
  };
  std::vector<Job> jobs;
  for (int l = l_min; l <= l_max; ++l) {
    if (opt.family) {
      for (auto& inst : family_instances(*opt.family, l))
        jobs.push_back({std::move(inst.notation), std::move(inst.assignment)});
    } else {
      for (auto& canon : enumerate_with_cache(l, opt.enum_cap, opt.cache_dir))
        jobs.push_back({std::move(canon), {}});
    }
  }

  ClassificationReport report;
  report.d = opt.d;
  report.rows.resize(jobs.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      report.rows[i] = evaluate_row(jobs[i].notation, opt);
      report.rows[i].family_assignment = jobs[i].assignment;
    }
  };
  int workers = std::min<int>(opt.workers, static_cast<int>(jobs.size()) > 0 ? static_cast<int>(jobs.size()) : 1);
  if (workers <= 1) {
    work(0, jobs.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (jobs.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(jobs.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return report;
}

}  // namespace ovalsieve
