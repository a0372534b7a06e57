#pragma once

// Shared driver for both solver paths: climbs the relaxation order until the
// moment solution is flat and its atoms certify as C-eigenpairs.

#include "teicp/extract.hpp"
#include "teicp/sdp.hpp"

#include <string>
#include <vector>

namespace teicp::detail {

enum class Verdict { Flat, Infeasible, OrderCap };

struct ClimbSpec {
  const Polynomial* objective = nullptr;
  const std::vector<Polynomial>* equalities = nullptr;
  const std::vector<Polynomial>* inequalities = nullptr;
  Sense sense = Sense::Minimize;
  int k_min = 1;
  int k_max = 1;
  int d0 = 1;
  const TensorPair* pair = nullptr;
  Normalization normalization = Normalization::BNormalized;
  Vec xi;  // sphere path only
  const SdpOptions* sdp = nullptr;
  const ExtractOptions* extract = nullptr;
  bool verbose = false;
  const char* tag = "";
};

struct ClimbResult {
  Verdict verdict = Verdict::OrderCap;
  int k = 0;
  double value = 0.0;
  FlatWitness witness;
  std::vector<CEigenpair> pairs;
  std::string note;  // why the cap was reached
};

ClimbResult climb(const ClimbSpec& spec);

/// Relaxation of maximize objective s.t. equalities, inequalities and
/// objective <= bound, for one order. Returns the outcome and whether the
/// solution is flat (making the value exact), with its certified atoms.
struct ProbeResult {
  SdpOutcome outcome;
  bool flat = false;
  std::vector<CEigenpair> pairs;
};
ProbeResult probe(const ClimbSpec& spec, double bound, int k);

/// Drops vectors within tol (max norm) of an earlier one.
void dedupe_pairs(std::vector<CEigenpair>& pairs, double tol);

}  // namespace teicp::detail
