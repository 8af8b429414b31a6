#include "core/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace permtyp {

namespace {

struct KahanSum {
  double sum = 0, carry = 0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

void validate_experiment(const JointDistribution& d,
                         const std::vector<Permutation>& perms, int n, double eps) {
  if (n < 1) throw std::invalid_argument("typicality experiment: n must be >= 1");
  if (eps < 0) throw std::invalid_argument("typicality experiment: eps must be >= 0");
  if (static_cast<int>(perms.size()) != d.arity())
    throw std::invalid_argument("typicality experiment: permutation count must equal distribution arity");
  for (const auto& p : perms)
    if (p.n() != n)
      throw std::invalid_argument("typicality experiment: permutation size differs from n");
}

// Column machinery shared by the exact and Monte Carlo paths: a column is a
// flat cell index; symbol_of[j][cell] recovers coordinate j.
struct ColumnCodec {
  std::size_t cells = 1;
  std::vector<std::vector<int>> symbol_of;
  std::vector<std::size_t> stride;

  explicit ColumnCodec(const JointDistribution& d) {
    const auto& sizes = d.alphabet_sizes();
    const int k = static_cast<int>(sizes.size());
    cells = d.cell_count();
    stride.assign(k, 1);
    for (int j = k - 2; j >= 0; --j)
      stride[j] = stride[j + 1] * static_cast<std::size_t>(sizes[j + 1]);
    symbol_of.assign(k, std::vector<int>(cells));
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (int j = k - 1; j >= 0; --j) {
        symbol_of[j][cell] = static_cast<int>(rest % static_cast<std::size_t>(sizes[j]));
        rest /= static_cast<std::size_t>(sizes[j]);
      }
    }
  }
};

// Histogram of the columns seen through the permutations: position i of the
// permuted sample takes row j's symbol from column perms[j](i).
void permuted_histogram(const std::vector<std::size_t>& cols,
                        const std::vector<const std::vector<int>*>& praw,
                        const ColumnCodec& codec, std::vector<long long>& hist) {
  std::fill(hist.begin(), hist.end(), 0);
  const int n = static_cast<int>(cols.size());
  const int k = static_cast<int>(praw.size());
  for (int i = 0; i < n; ++i) {
    std::size_t idx = 0;
    for (int j = 0; j < k; ++j)
      idx += static_cast<std::size_t>(codec.symbol_of[j][cols[(*praw[j])[i]]]) *
             codec.stride[j];
    ++hist[idx];
  }
}

// prod_cell p[cell]^hist[cell] with a fixed factor grouping, so outcomes with
// equal column histograms get bitwise-identical weights.
double histogram_weight(const std::vector<long long>& hist, const std::vector<double>& probs) {
  double w = 1.0;
  for (std::size_t cell = 0; cell < hist.size(); ++cell) {
    if (hist[cell] == 0) continue;
    if (probs[cell] == 0) return 0.0;
    for (long long t = 0; t < hist[cell]; ++t) w *= probs[cell];
  }
  return w;
}

std::size_t draw_column(const JointDistribution& d, double u) {
  double acc = 0;
  std::size_t last_support = 0;
  for (std::size_t cell = 0; cell < d.cell_count(); ++cell) {
    const double p = d.prob_flat(cell);
    if (p == 0) continue;
    acc += p;
    last_support = cell;
    if (u < acc) return cell;
  }
  return last_support;  // u landed in the rounding gap below 1
}

Permutation random_permutation(int n, PhiloxStream& rng) {
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(image[i], image[j]);
  }
  return Permutation(image);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SequenceSample sample_iid(const JointDistribution& d, int n, PhiloxStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_iid: n must be >= 1");
  const ColumnCodec codec(d);
  const int k = d.arity();
  std::vector<std::vector<int>> rows(k, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    const std::size_t cell = draw_column(d, rng.next_unit());
    for (int j = 0; j < k; ++j) rows[j][i] = codec.symbol_of[j][cell];
  }
  return make_sample(std::move(rows));
}

bool exact_enumeration_feasible(const JointDistribution& d, int n) {
  BigInt total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<long long>(d.cell_count());
    if (total > kOutcomeGuard) return false;
  }
  return true;
}

double exact_typicality_prob(const JointDistribution& d,
                             const std::vector<Permutation>& perms, int n,
                             double eps, int workers) {
  validate_experiment(d, perms, n, eps);
  if (!exact_enumeration_feasible(d, n))
    throw InfeasibleError("exact_typicality_prob: |alphabet|^n exceeds the outcome guard of " +
                          std::to_string(kOutcomeGuard));
  const ColumnCodec codec(d);
  std::vector<const std::vector<int>*> praw;
  praw.reserve(perms.size());
  for (const auto& p : perms) praw.push_back(&p.raw());

  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= codec.cells;

  // Fixed chunking keyed to the problem size; worker count only affects which
  // thread computes a chunk, never its content or the reduction order.
  const std::size_t chunk_count = std::min<std::size_t>(total, 256);
  std::vector<double> partial(chunk_count, 0.0);

  const auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = total / chunk_count * c + std::min(c, total % chunk_count);
    const std::size_t end =
        total / chunk_count * (c + 1) + std::min(c + 1, total % chunk_count);
    std::vector<std::size_t> cols(n);
    std::size_t rest = begin;
    for (int i = n - 1; i >= 0; --i) {
      cols[i] = rest % codec.cells;
      rest /= codec.cells;
    }
    std::vector<long long> perm_hist(codec.cells), orig_hist(codec.cells);
    KahanSum sum;
    for (std::size_t outcome = begin; outcome < end; ++outcome) {
      permuted_histogram(cols, praw, codec, perm_hist);
      if (counts_typical(perm_hist.data(), codec.cells, n, d.flat().data(), eps)) {
        std::fill(orig_hist.begin(), orig_hist.end(), 0);
        for (int i = 0; i < n; ++i) ++orig_hist[cols[i]];
        sum.add(histogram_weight(orig_hist, d.flat()));
      }
      for (int i = n - 1; i >= 0; --i) {  // odometer step
        if (++cols[i] < codec.cells) break;
        cols[i] = 0;
      }
    }
    partial[c] = sum.sum;
  };

  int nworkers = std::min<int>(resolve_workers(workers), static_cast<int>(chunk_count));
  if (total < 100'000) nworkers = 1;  // not worth spawning threads
  if (nworkers <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t c = next.fetch_add(1);
          if (c >= chunk_count) return;
          run_chunk(c);
        }
      });
    for (auto& t : pool) t.join();
  }

  KahanSum reduce;
  for (double p : partial) reduce.add(p);
  return reduce.sum;
}

EstimateReport estimate_typicality_prob(const TrialConfig& cfg, int workers) {
  validate_experiment(cfg.dist, cfg.perms, cfg.n, cfg.eps);
  if (cfg.trials < 1) throw std::invalid_argument("estimate_typicality_prob: trials must be >= 1");
  const ColumnCodec codec(cfg.dist);
  std::vector<const std::vector<int>*> praw;
  for (const auto& p : cfg.perms) praw.push_back(&p.raw());

  const auto run_range = [&](long long begin, long long end) -> long long {
    std::vector<std::size_t> cols(cfg.n);
    std::vector<long long> hist(codec.cells);
    long long hits = 0;
    for (long long trial = begin; trial < end; ++trial) {
      PhiloxStream rng(cfg.seed, static_cast<std::uint64_t>(trial));
      for (int i = 0; i < cfg.n; ++i) cols[i] = draw_column(cfg.dist, rng.next_unit());
      permuted_histogram(cols, praw, codec, hist);
      if (counts_typical(hist.data(), codec.cells, cfg.n, cfg.dist.flat().data(), cfg.eps))
        ++hits;
    }
    return hits;
  };

  const int nworkers =
      static_cast<int>(std::min<long long>(resolve_workers(workers), cfg.trials));
  long long hits = 0;
  if (nworkers <= 1) {
    hits = run_range(0, cfg.trials);
  } else {
    std::vector<long long> counts(nworkers, 0);
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w) {
      const long long begin = cfg.trials * w / nworkers;
      const long long end = cfg.trials * (w + 1) / nworkers;
      pool.emplace_back([&, w, begin, end] { counts[w] = run_range(begin, end); });
    }
    for (auto& t : pool) t.join();
    for (long long c : counts) hits += c;
  }

  EstimateReport report;
  report.trials = cfg.trials;
  report.p_hat = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  report.std_err =
      std::sqrt(report.p_hat * (1.0 - report.p_hat) / static_cast<double>(cfg.trials));
  return report;
}

double Prop1Report::max_discrepancy() const {
  return std::max({max_same_perm, max_class_spread, max_reduction});
}

Prop1Report verify_proposition1(const JointDistribution& d, int n, double eps,
                                std::uint64_t seed, int random_checks) {
  if (d.arity() != 2)
    throw std::invalid_argument("verify_proposition1: requires a pair distribution");
  if (!exact_enumeration_feasible(d, n))
    throw InfeasibleError("verify_proposition1: enumeration infeasible at this n");

  Prop1Report report;
  report.n = n;
  report.eps = eps;
  const Permutation id = Permutation::identity(n);
  const double base = exact_typicality_prob(d, {id, id}, n, eps);

  // (i) same permutation on both sequences
  PhiloxStream rng(seed, 1);
  for (int t = 0; t < random_checks; ++t) {
    const Permutation sigma = random_permutation(n, rng);
    const double p = exact_typicality_prob(d, {sigma, sigma}, n, eps);
    report.max_same_perm = std::max(report.max_same_perm, std::abs(p - base));
  }

  // (ii) constant within each cycle-type class, exhaustive over S_n
  std::map<std::pair<int, std::vector<int>>, std::pair<double, double>> classes;
  std::map<std::pair<int, std::vector<int>>, double> standard_prob;
  for (const auto& pi : all_permutations(n)) {
    const double p = exact_typicality_prob(d, {id, pi}, n, eps);
    const CycleType ct = cycle_type(pi);
    const auto key = std::make_pair(ct.m, ct.lengths);
    auto [it, inserted] = classes.emplace(key, std::make_pair(p, p));
    if (!inserted) {
      it->second.first = std::min(it->second.first, p);
      it->second.second = std::max(it->second.second, p);
    }
    if (pi == standard_permutation(ct)) standard_prob[key] = p;
    ++report.perms_checked;
  }
  report.classes = static_cast<int>(classes.size());
  for (const auto& [key, range] : classes)
    report.max_class_spread = std::max(report.max_class_spread, range.second - range.first);

  // (iii) reduction of an arbitrary pair to (identity, standard permutation)
  PhiloxStream rng2(seed, 2);
  for (int t = 0; t < random_checks; ++t) {
    const Permutation px = random_permutation(n, rng2);
    const Permutation py = random_permutation(n, rng2);
    const double paired = exact_typicality_prob(d, {px, py}, n, eps);
    const CycleType ct = cycle_type(compose(px.inverse(), py));
    const double reduced = standard_prob.at(std::make_pair(ct.m, ct.lengths));
    report.max_reduction = std::max(report.max_reduction, std::abs(paired - reduced));
  }

  report.pass = report.max_discrepancy() <= report.tolerance;
  return report;
}

void SweepReport::merge(SweepReport other) {
  for (auto& row : other.rows) rows.push_back(std::move(row));
  violations += other.violations;
  pass = pass && other.pass;
}

namespace {

void push_exact_row(SweepReport& report, std::string config_id, long long n,
                    std::string group, double eps, double exact, const BoundReport& bound) {
  SweepRow row;
  row.config_id = std::move(config_id);
  row.n = n;
  row.group = std::move(group);
  row.eps = eps;
  row.exact = exact;
  row.bound = bound.explicit_bound;
  row.margin = bound.explicit_bound - exact;
  row.violation = row.margin < 0;
  if (row.violation) {
    ++report.violations;
    report.pass = false;
  }
  report.rows.push_back(std::move(row));
}

}  // namespace

SweepReport sweep_theorem1(const JointDistribution& d, const std::string& label,
                           const std::vector<int>& ns, const std::vector<double>& epss) {
  SweepReport report;
  for (int n : ns) {
    const Permutation id = Permutation::identity(n);
    const auto perms = all_permutations(n);
    for (double eps : epss) {
      for (const auto& pi : perms) {
        const long long m = pi.fixed_point_count();
        const double exact = exact_typicality_prob(d, {id, pi}, n, eps);
        const BoundReport bound = theorem1_bound(n, m, d, eps);
        push_exact_row(report, "thm1/" + label + "/pi=" + cycles_text(pi), n,
                       "m=" + std::to_string(m), eps, exact, bound);
      }
    }
  }
  return report;
}

SweepReport sweep_lemma4(const JointDistribution& d, const std::string& label,
                         const std::vector<int>& ns, const std::vector<double>& epss) {
  SweepReport report;
  for (int n : ns) {
    const Permutation id = Permutation::identity(n);
    for (const auto& pi : all_permutations(n)) {
      const CycleType ct = cycle_type(pi);
      if (ct.m != 0 || ct.cycle_count() != 1) continue;
      for (double eps : epss) {
        const double exact = exact_typicality_prob(d, {id, pi}, n, eps);
        const BoundReport bound = lemma4_bound(n, d, eps);
        push_exact_row(report, "lemma4/" + label + "/pi=" + cycles_text(pi), n,
                       "single-cycle", eps, exact, bound);
      }
    }
  }
  return report;
}

SweepReport sweep_lemma5(const JointDistribution& d, const std::string& label,
                         const std::vector<int>& ns, const std::vector<int>& ss,
                         const std::vector<double>& epss) {
  SweepReport report;
  for (int n : ns) {
    const Permutation id = Permutation::identity(n);
    for (const auto& pi : all_permutations(n)) {
      const CycleType ct = cycle_type(pi);
      if (ct.m != 0) continue;
      const int max_len = ct.lengths.empty() ? 0 : ct.lengths.back();
      for (int s : ss) {
        if (max_len >= s) continue;  // the lemma wants every cycle shorter than s
        for (double eps : epss) {
          const double exact = exact_typicality_prob(d, {id, pi}, n, eps);
          const BoundReport bound = lemma5_bound(n, s, d, eps);
          push_exact_row(report, "lemma5/" + label + "/pi=" + cycles_text(pi), n,
                         "s=" + std::to_string(s), eps, exact, bound);
        }
      }
    }
  }
  return report;
}

SweepReport sweep_theorem2(const JointDistribution& d, const std::string& label, int n,
                           const std::vector<std::vector<Permutation>>& pvs,
                           const std::vector<double>& epss) {
  SweepReport report;
  int vector_id = 0;
  for (const auto& pv : pvs) {
    const BellSignature sig = bell_signature(pv);
    for (double eps : epss) {
      const double exact = exact_typicality_prob(d, pv, n, eps);
      const BoundReport bound = theorem2_bound(n, sig, d, eps);
      push_exact_row(report, "thm2/" + label + "/pv" + std::to_string(vector_id), n,
                     "sig=" + signature_text(sig), eps, exact, bound);
    }
    ++vector_id;
  }
  return report;
}

JointDistribution default_triple_distribution() {
  // Uniform bit through two binary symmetric channels (crossovers 0.1, 0.2);
  // every cell of the triple is positive.
  std::vector<double> cells(8);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        cells[static_cast<std::size_t>(4 * x + 2 * y + z)] =
            0.5 * (x == y ? 0.9 : 0.1) * (y == z ? 0.8 : 0.2);
  return JointDistribution({2, 2, 2}, std::move(cells));
}

std::vector<std::vector<Permutation>> default_triple_vectors() {
  const int n = 4;
  const Permutation id = Permutation::identity(n);
  const Permutation four_cycle = parse_cycles_text("(1 2 3 4)", n);
  const Permutation double_swap = parse_cycles_text("(1 3)(2 4)", n);
  const Permutation pair_swap = parse_cycles_text("(1 2)(3 4)", n);
  const Permutation one_swap = parse_cycles_text("(1 2)", n);
  return {
      {id, id, id},                     // everything aligned: one-block signature
      {id, four_cycle, double_swap},    // 3-fold derangement: all-singletons
      {id, pair_swap, id},              // first/third aligned
      {id, id, pair_swap},              // first/second aligned
      {id, one_swap, one_swap},         // mixed: two indices split, two aligned
  };
}

SweepReport default_bound_sweep() {
  const JointDistribution dsbs01 = JointDistribution::dsbs(0.1);
  const JointDistribution dsbs02 = JointDistribution::dsbs(0.2);
  SweepReport report;
  for (const auto& [d, label] :
       std::vector<std::pair<const JointDistribution*, std::string>>{
           {&dsbs01, "dsbs01"}, {&dsbs02, "dsbs02"}}) {
    report.merge(sweep_theorem1(*d, label, {3, 4, 5}, {0.05, 0.1}));
    report.merge(sweep_lemma4(*d, label, {4, 5, 6}, {0.0, 0.1}));
    report.merge(sweep_lemma5(*d, label, {4, 6}, {3, 4}, {0.0, 0.1}));
  }
  report.merge(sweep_theorem2(default_triple_distribution(), "triple", 4,
                              default_triple_vectors(), {0.05, 0.1}));
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "# permtyp sweep v1\n";
  out << "config_id,n,m_or_signature,epsilon,exact,p_hat,stderr,bound,margin\n";
  for (const auto& row : report.rows) {
    out << row.config_id << ',' << row.n << ',' << '"' << row.group << '"' << ','
        << format_double(row.eps) << ',';
    if (row.exact) out << format_double(*row.exact);
    out << ',';
    if (row.p_hat) out << format_double(*row.p_hat);
    out << ',';
    if (row.std_err) out << format_double(*row.std_err);
    out << ',' << format_double(row.bound) << ',' << format_double(row.margin) << '\n';
  }
  return out.str();
}

}  // namespace permtyp
