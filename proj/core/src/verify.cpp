#include <divfree/verify.hpp>

#include <chrono>
#include <thread>
#include <utility>

#include <json.hpp>

#include <divfree/errors.hpp>
#include <divfree/sampling.hpp>

namespace divfree {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string grade_str(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(g[i]);
  }
  s += ')';
  return s;
}

// Pads the first coordinates into a rank-sized grade / functional so the
// fixed catalogs work on any rank >= 3.
GroupElement pad_grade(std::size_t rank, std::vector<std::int64_t> v) {
  v.resize(rank, 0);
  return GroupElement(std::move(v));
}

Functional pad_functional(std::size_t rank, std::vector<Scalar> v) {
  v.resize(rank, Scalar(0));
  return Functional(std::move(v));
}

void merge(SweepReport& into, const AxiomReport& r, const std::string& label) {
  into.checks += r.checks;
  if (r.failures > 0 && into.failures == 0) {
    into.first_counterexample = label + ": " + r.first_counterexample;
  }
  into.failures += r.failures;
}

}  // namespace

std::string to_json(const SweepReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["checks"] = r.checks;
  j["failures"] = r.failures;
  j["ok"] = r.ok();
  j["first_counterexample"] = r.first_counterexample;
  j["seconds"] = r.seconds;
  return j.dump(2);
}

SweepReport jacobi_sweep(const Space& W, int radius, int jobs) {
  if (radius < 1) throw DomainError("jacobi_sweep: radius must be at least 1");
  if (jobs < 1) throw DomainError("jacobi_sweep: jobs must be at least 1");
  const auto start = Clock::now();

  SweepReport rep;
  rep.suite = "jacobi";

  std::vector<WittElement> elems;
  for (const GroupElement& g : box_grades(W.rank(), radius)) {
    if (g.is_zero()) continue;
    for (const SBasisElement& e : s_grade_basis(W, g)) elems.push_back(e.to_witt());
  }
  const std::size_t n = elems.size();

  // All pairwise brackets once; each is homogeneous (single grade).
  std::vector<WittElement> pair_bracket(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      pair_bracket[j * n + k] = bracket(W, elems[j], elems[k]);
    }
  }

  struct Tally {
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::string first;
  };

  const auto run_range = [&](std::size_t lo, std::size_t hi, Tally& t) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          WittElement sum = bracket(W, elems[i], pair_bracket[j * n + k]);
          sum += bracket(W, elems[j], pair_bracket[k * n + i]);
          sum += bracket(W, elems[k], pair_bracket[i * n + j]);
          ++t.checks;
          if (!sum.is_zero()) {
            ++t.failures;
            if (t.first.empty()) {
              t.first = "triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                        std::to_string(k) + ")";
            }
          }
        }
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n ? n : 1);
  std::vector<Tally> tallies(workers);
  if (workers <= 1) {
    run_range(0, n, tallies[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      pool.emplace_back(run_range, lo, hi, std::ref(tallies[w]));
    }
    for (auto& th : pool) th.join();
  }
  for (const Tally& t : tallies) {
    rep.checks += t.checks;
    if (t.failures > 0 && rep.failures == 0) rep.first_counterexample = t.first;
    rep.failures += t.failures;
  }

  rep.seconds = elapsed_seconds(start);
  return rep;
}

SweepReport divergence_identity_sweep(const Space& W, int radius, int samples,
                                      std::uint64_t seed) {
  if (radius < 1) throw DomainError("divergence_identity_sweep: radius must be at least 1");
  if (samples < 1) throw DomainError("divergence_identity_sweep: samples must be at least 1");
  const auto start = Clock::now();

  SweepReport rep;
  rep.suite = "div-identities";
  Sampler s(seed);

  for (int i = 0; i < samples; ++i) {
    const WittElement u = s.witt_element(W, radius, 3);
    const WittElement v = s.witt_element(W, radius, 3);
    const GroupAlgebraElement lhs = divergence(W, bracket(W, u, v));
    const GroupAlgebraElement rhs =
        act_on_group_algebra(W, u, divergence(W, v)) -
        act_on_group_algebra(W, v, divergence(W, u));
    ++rep.checks;
    if (!(lhs == rhs)) {
      ++rep.failures;
      if (rep.first_counterexample.empty()) {
        rep.first_counterexample = "cocycle identity, sample " + std::to_string(i);
      }
    }
  }

  for (int i = 0; i < samples; ++i) {
    const GroupAlgebraElement f = s.group_algebra_element(W, radius, 3);
    const WittElement u = s.witt_element(W, radius, 3);
    const GroupAlgebraElement lhs = divergence(W, group_algebra_scale(f, u));
    const GroupAlgebraElement rhs = f * divergence(W, u) + act_on_group_algebra(W, u, f);
    ++rep.checks;
    if (!(lhs == rhs)) {
      ++rep.failures;
      if (rep.first_counterexample.empty()) {
        rep.first_counterexample = "scaling identity, sample " + std::to_string(i);
      }
    }
  }

  rep.seconds = elapsed_seconds(start);
  return rep;
}

SweepReport module_axiom_sweep_family(const Space& W, Family family, int radius, int draws,
                                      std::uint64_t seed) {
  if (radius < 1) throw DomainError("module_axiom_sweep: radius must be at least 1");
  if (draws < 1) throw DomainError("module_axiom_sweep: draws must be at least 1");
  const auto start = Clock::now();

  SweepReport rep;
  rep.suite = std::string("module-axiom ") + family_name(family);
  Sampler s(seed);

  const auto run_spec = [&](const ModuleSpec& spec, const std::string& label) {
    merge(rep, verify_module_axiom(W, spec, radius, /*extra_samples=*/3, s.rng()()), label);
  };

  switch (family) {
    case Family::Trivial:
      run_spec(ModuleSpec::trivial(W.rank()), "trivial");
      break;
    case Family::M:
      for (int k = 0; k < draws; ++k) {
        run_spec(s.spec_m(W, /*integral=*/k % 2 == 0), "M draw " + std::to_string(k));
      }
      break;
    case Family::A:
      for (int k = 0; k < draws; ++k) run_spec(s.spec_a(W), "A draw " + std::to_string(k));
      break;
    case Family::B:
      for (int k = 0; k < draws; ++k) run_spec(s.spec_b(W), "B draw " + std::to_string(k));
      break;
  }

  rep.seconds = elapsed_seconds(start);
  return rep;
}

SweepReport module_axiom_sweep(const Space& W, int radius, int draws, std::uint64_t seed) {
  const auto start = Clock::now();
  SweepReport rep;
  rep.suite = "module-axiom";
  int offset = 0;
  for (const Family f : {Family::Trivial, Family::M, Family::A, Family::B}) {
    const SweepReport part = module_axiom_sweep_family(W, f, radius, draws, seed + offset++);
    rep.checks += part.checks;
    if (part.failures > 0 && rep.failures == 0) {
      rep.first_counterexample = part.first_counterexample;
    }
    rep.failures += part.failures;
  }
  rep.seconds = elapsed_seconds(start);
  return rep;
}

SweepReport lemma52_suite(const Space& W, int range) {
  if (W.rank() < 3) throw DomainError("lemma52_suite: rank at least 3 is required");
  if (range < 1) throw DomainError("lemma52_suite: range must be at least 1");
  const auto start = Clock::now();

  SweepReport rep;
  rep.suite = "lemma52";
  const std::size_t r = W.rank();

  struct Case {
    std::string name;
    ModuleSpec spec;
    GroupElement sigma;
    GroupElement nu;
    bool mixed;  // use two distinct kernel directions
  };

  const GroupElement s1 = pad_grade(r, {1, 0, 0});
  const GroupElement s2 = pad_grade(r, {0, 1, 0});
  const GroupElement s3 = pad_grade(r, {1, 1, 0});

  const std::vector<std::pair<std::string, ModuleSpec>> specs = {
      {"M zero", ModuleSpec::family_m(pad_functional(r, {}))},
      {"M fractional", ModuleSpec::family_m(pad_functional(r, {Scalar(1), Scalar(1, 2), Scalar(-1, 3)}))},
      {"M integral", ModuleSpec::family_m(W.grade_functional(pad_grade(r, {2, 0, -1})))},
      {"A generic", ModuleSpec::family_a(pad_grade(r, {1, 0, 0}), pad_functional(r, {Scalar(0), Scalar(2), Scalar(3)}))},
      {"A zero-zeta", ModuleSpec::family_a(pad_grade(r, {}), pad_functional(r, {Scalar(1), Scalar(1), Scalar(1)}))},
      {"B generic", ModuleSpec::family_b(pad_grade(r, {1, -1, 0}), pad_functional(r, {Scalar(5), Scalar(0), Scalar(1)}))},
      {"B zero-zeta", ModuleSpec::family_b(pad_grade(r, {}), pad_functional(r, {Scalar(0), Scalar(1), Scalar(2)}))},
      {"trivial", ModuleSpec::trivial(r)},
  };

  std::vector<Case> cases;
  for (const auto& [name, spec] : specs) {
    cases.push_back({name + " / square", spec, s1, pad_grade(r, {1, 1, 1}), false});
    cases.push_back({name + " / mixed", spec, s3, pad_grade(r, {-1, 2, 0}), true});
  }
  // Special grade placed on the scan line: the composite must be
  // identically zero there, which is still constancy.
  cases.push_back({"A generic / special on line", specs[3].second, s1, pad_grade(r, {-2, 0, 0}), false});
  cases.push_back({"A zero-zeta / special on line", specs[4].second, s2, pad_grade(r, {0, 2, 0}), false});
  cases.push_back({"B generic / special on line", specs[5].second, s1, pad_grade(r, {-3, 1, 0}), true});
  cases.push_back({"B zero-zeta / special on line", specs[6].second, s1, pad_grade(r, {4, 0, 0}), false});

  for (const Case& c : cases) {
    const auto kernel = kernel_basis(W.grade_functional(c.sigma));
    const DVector& d = kernel.at(0);
    const DVector& dprime = c.mixed ? kernel.at(1) : kernel.at(0);
    const Lemma52Report lr = lemma52_check(W, c.spec, c.sigma, d, dprime, c.nu, range);
    rep.checks += lr.checks;
    if (!lr.ok()) {
      ++rep.failures;
      if (rep.first_counterexample.empty()) {
        rep.first_counterexample =
            c.name + (lr.constant ? ": rescaled relations failed" : ": composite not constant");
      }
    }
  }

  rep.seconds = elapsed_seconds(start);
  return rep;
}

SweepReport lemma53_suite(const Space& W, int range) {
  if (W.rank() < 3) throw DomainError("lemma53_suite: rank at least 3 is required");
  if (range < 1) throw DomainError("lemma53_suite: range must be at least 1");
  const auto start = Clock::now();

  SweepReport rep;
  rep.suite = "lemma53";
  const std::size_t r = W.rank();

  struct Case {
    std::string name;
    ModuleSpec spec;
    GroupElement sigma;
    GroupElement rho;
    GroupElement nu;
  };

  const GroupElement sa = pad_grade(r, {1, 0, 0});
  const GroupElement ra = pad_grade(r, {0, 1, 0});
  const GroupElement sb = pad_grade(r, {1, 0, 1});

  const std::vector<Case> cases = {
      {"M zero / axes", ModuleSpec::family_m(pad_functional(r, {})), sa, ra,
       pad_grade(r, {0, 0, 1})},
      {"M fractional / axes",
       ModuleSpec::family_m(pad_functional(r, {Scalar(1, 2), Scalar(-1, 3), Scalar(3, 4)})), sa,
       ra, pad_grade(r, {2, -1, 0})},
      {"M zero / skew sigma", ModuleSpec::family_m(pad_functional(r, {})), sb, ra,
       pad_grade(r, {1, 0, 0})},
      {"A special off plane",
       ModuleSpec::family_a(pad_grade(r, {0, 0, -1}),
                            pad_functional(r, {Scalar(1), Scalar(2), Scalar(3)})),
       sa, ra, pad_grade(r, {0, 0, 2})},
      {"A special on plane",
       ModuleSpec::family_a(pad_grade(r, {0, 0, -1}),
                            pad_functional(r, {Scalar(0), Scalar(0), Scalar(5)})),
       sa, ra, pad_grade(r, {0, 0, 1})},
      {"B special off plane",
       ModuleSpec::family_b(pad_grade(r, {0, 0, -2}),
                            pad_functional(r, {Scalar(1), Scalar(1), Scalar(1)})),
       sa, ra, pad_grade(r, {0, 0, 1})},
      {"trivial", ModuleSpec::trivial(r), sa, ra, pad_grade(r, {})},
      {"M zero / nu orthogonal", ModuleSpec::family_m(pad_functional(r, {})), sa, ra,
       pad_grade(r, {1, 1, 0})},
  };

  std::uint64_t met = 0;
  for (const Case& c : cases) {
    const Lemma53Basis basis = lemma53_default_basis(W, c.sigma, c.rho);
    const Lemma53Report lr = lemma53_check(W, c.spec, c.sigma, c.rho, c.nu, basis, range);
    rep.checks += lr.checks + 1;  // +1 for the hypothesis evaluation itself
    if (lr.hypotheses_met) {
      ++met;
      if (!lr.ok()) {
        ++rep.failures;
        if (rep.first_counterexample.empty()) {
          rep.first_counterexample = c.name + ": a verified relation failed";
        }
      }
    }
  }
  if (met == 0) {
    ++rep.failures;
    if (rep.first_counterexample.empty()) {
      rep.first_counterexample = "no catalog case met the hypotheses";
    }
  }

  rep.seconds = elapsed_seconds(start);
  return rep;
}

SweepReport span_suite(const Space& W, int radius, int depth) {
  const auto start = Clock::now();
  SweepReport rep;
  rep.suite = "span";
  const SpanCheckReport r = span_check(W, GeneratorSet::standard(W), radius, depth);
  rep.checks = r.grades_checked;
  rep.failures = r.shortfalls.size();
  if (!r.shortfalls.empty()) {
    const SpanCheckRow& row = r.shortfalls.front();
    rep.first_counterexample = "grade " + grade_str(row.grade) + ": achieved " +
                               std::to_string(row.achieved) + " of " +
                               std::to_string(row.expected);
  }
  rep.seconds = elapsed_seconds(start);
  return rep;
}

}  // namespace divfree
