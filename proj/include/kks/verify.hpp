#pragma once

// Exhaustive verification sweeps. Each sweep compares a closed form against an
// independent computation on every instance in range and collects counterexamples
// with JSON witnesses. Results are deterministic regardless of the thread count.

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

namespace kks {

struct CheckTally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;  // instances where an oracle could not certify existence
};

struct Counterexample {
  std::string check;
  nlohmann::json witness;
};

/// Accumulates check outcomes for one unit of work.
class Recorder {
 public:
  void pass(const std::string& check) { ++tallies_[check].instances; }
  void skip(const std::string& check) { ++tallies_[check].skipped; }
  void fail(const std::string& check, nlohmann::json witness);
  /// Records a pass or a failure; the witness is only built on failure.
  template <class W>
  void expect(const std::string& check, bool ok, W&& witness) {
    if (ok) {
      pass(check);
    } else {
      fail(check, witness());
    }
  }
  void merge(const Recorder& other);

  const std::map<std::string, CheckTally>& tallies() const { return tallies_; }
  const std::vector<Counterexample>& counterexamples() const { return counterexamples_; }

 private:
  std::map<std::string, CheckTally> tallies_;
  std::vector<Counterexample> counterexamples_;
};

struct VerifyReport {
  std::string suite;
  int k = 1;
  int max_size = 0;
  Recorder results;

  bool ok() const { return results.counterexamples().empty(); }
  std::size_t instances() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Counterexamples kept per check in a report; the tally still counts all of them.
inline constexpr std::size_t kMaxWitnessesPerCheck = 20;

/// 0 means one worker per hardware thread.
int resolve_jobs(int jobs);

/// Signed Pieri product of gtilde by htilde_r against the interval-union form,
/// 0/1 coefficients and the fiber-sum formula, over |lambda| <= max_size, 1 <= r <= k.
VerifyReport verify_pieri_signed(int k, int max_size, int jobs = 1);
/// Inclusion-exclusion form against the interval-union form over the same range.
VerifyReport verify_pieri_ie(int k, int max_size, int jobs = 1);
/// Both of the above in one report.
VerifyReport verify_pieri_sum(int k, int max_size, int jobs = 1);

/// gtilde rectangle factorization over |lambda| <= max_size, 1 <= t <= k.
VerifyReport verify_gtilde_factorization(int k, int max_size, int jobs = 1);
/// k-Schur rectangle factorization over |lambda| <= fac_size and top-degree
/// compatibility of g_lambda over |lambda| <= top_size.
VerifyReport verify_kschur(int k, int fac_size, int top_size, int jobs = 1);
/// Both rectangle factorizations and top-degree compatibility up to max_size.
VerifyReport verify_factorization(int k, int max_size, int jobs = 1);

/// Order-theory properties: pair checks over the length ball of radius
/// max_length, triple checks over radius max_length - 2.
VerifyReport verify_order_props(int k, int max_length, int jobs = 1);
/// Fiber structure and the A_0 characterizations for Grassmannian u, w of
/// length <= max_length.
VerifyReport verify_fibers(int k, int max_length, int jobs = 1);

}  // namespace kks
