#pragma once

// The standard free-product sign function, splitting of products and positivization of
// rational expressions over F2.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "verbalrat/error.hpp"
#include "verbalrat/free_product.hpp"
#include "verbalrat/rat_expr.hpp"

namespace verbalrat {

/// Positive cone of one cyclic factor. For Z it is {k >= 0}; for Z/m a submonoid containing 0
/// (in a finite group that is a subgroup).
class FactorSign {
 public:
  static FactorSign integers() { return FactorSign(FactorModel::infinite(), {}); }
  /// `positive` lists residues in [0, m); 0 is added. Throws PreconditionError unless closed under +.
  static FactorSign cyclic(std::int64_t m, std::vector<std::int64_t> positive);

  const FactorModel& model() const { return model_; }
  bool positive(std::int64_t exponent) const;
  const std::vector<bool>& residues() const { return residues_; }

 private:
  FactorSign(FactorModel m, std::vector<bool> r) : model_(m), residues_(std::move(r)) {}
  FactorModel model_;
  std::vector<bool> residues_;
};

/// Standard sign on A*B: an element is positive iff each syllable is positive in its factor.
class SignModel {
 public:
  SignModel(FactorSign a, FactorSign b);
  /// Z*Z = F2 with exponent >= 0 in both factors, i.e. positive words.
  static SignModel free_group() { return {FactorSign::integers(), FactorSign::integers()}; }

  const FreeProduct& group() const { return group_; }
  const FactorSign& factor(Factor f) const { return f == Factor::A ? a_ : b_; }
  bool positive(const Syllable& s) const { return factor(s.factor).positive(s.exponent); }

 private:
  FactorSign a_, b_;
  FreeProduct group_;
};

bool is_positive(const FPElement& u, const SignModel& sigma);

enum class SplitCase { both_positive, case_1, case_2, mirrored_case_1, mirrored_case_2 };
std::string_view to_string(SplitCase c);

struct SplitTrace {
  /// 0 when no negative element exists on that side.
  std::size_t i0 = 0;
  std::size_t j0 = 0;
  FPElement c;
  /// The factor element b (identity exponent 0 allowed) and its factor.
  Factor b_factor = Factor::A;
  std::int64_t b0 = 0;
  /// S u^-1 and u T are positive.
  FPElement u;
  SplitCase split_case = SplitCase::both_positive;
};

/// For finite S, T with ST positive, a u with Su^-1 and uT positive. Throws PreconditionError naming
/// a pair with non-positive product; the result is verified before returning.
SplitTrace split_product(const std::vector<FPElement>& s, const std::vector<FPElement>& t, const SignModel& sigma);

/// Raised when u L v has a negative member.
class NegativeMemberError : public PreconditionError {
 public:
  NegativeMemberError(const std::string& what, Word witness) : PreconditionError(what), witness_(std::move(witness)) {}
  const Word& witness() const { return witness_; }

 private:
  Word witness_;
};

struct PositivizeOptions {
  std::size_t max_depth = 64;
  /// Largest member length used when sampling a product operand for split_product.
  std::size_t max_sample_len = 32;
};

/// One recursion step.
struct PositivizeTrace {
  std::string node;        // finite | union | product | star
  std::string step_case;   // leaf | split | positive-star | conjugated-star | empty
  Word u, v;
  Word w;                  // product middle element, or uv for a star
  Word r;                  // star conjugator
  std::int64_t b0 = 0;
  std::size_t search_window = 0;
  int acceptor_states = 0;
  std::vector<PositivizeTrace> children;
};

struct PositivizeResult {
  RatExpr expr;
  PositivizeTrace trace;
};

/// An expression with positive finite leaves that denotes u L v. L is over F2 and u L v must consist
/// of positive words (checked exactly; NegativeMemberError otherwise).
PositivizeResult positivize(const RatExpr& l, const Word& u, const Word& v, const PositivizeOptions& opts = {});

/// positivize with u = v = 1.
PositivizeResult positivize_total(const RatExpr& l, const PositivizeOptions& opts = {});

/// True if every element of every finite leaf is a positive word.
bool has_positive_leaves(const RatExpr& e);

}  // namespace verbalrat
