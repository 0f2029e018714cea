// The vertex-transitive census: enumerate the single-vertex diagrams of a
// given degree up to equivalence (subgroup class of the local action plus an
// orbit pairing up to the normalizer action), classify every row, compare
// with the published reference tables, and check the simplicity criteria.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lad/orient.hpp"
#include "lad/quotient.hpp"

namespace lad {

struct VtAction {
    PermGroup local_action; // subgroup class representative on d points
    Perm pairing;           // involution on the orbit list (orbits by least point)
};

// For each subgroup class of Sym(degree): involutions of the symmetric group
// on the orbit list, up to conjugacy by the normalizer's induced action on
// orbits.  Deterministic order.  2 <= degree <= bound.
std::vector<VtAction> enumerate_vt_actions(int degree, int bound = 6);

// The reference tables' bracket notation of a pairing: one token per transposition,
// each token the two orbit sizes ascending, tokens sorted; "id" when the
// pairing is trivial.  Ambiguous between rows only at degrees >= 6, where it
// remains display-only.
std::string pairing_label(const PermGroup& h, const Perm& pairing);

// Primes dividing the order of some point stabilizer of h.  Empty exactly
// when h acts freely.
std::vector<int> local_prime_content(const PermGroup& h);

struct CensusRow {
    int degree = 0;
    std::string local_action;         // catalog name
    std::string pairing;              // bracket label
    std::string lpc;                  // "{}", "{2}", "{2,3}", ...
    std::string fixed_end;            // "Yes", "No", or "N/A" at degree <= 1
    std::string quotient;             // rendered FreeProductExpr
    std::string plus_local;           // catalog name of the G+ local action
    std::vector<std::string> flags;   // subset of {"free", "plus-simple", "errata"}
};

// All rows of the given degree in deterministic order.  Degrees 0 and 1 are
// the two degenerate single-row cases.  `jobs` parallelizes across subgroup
// classes; the output order does not depend on it.
std::vector<CensusRow> census_rows(int degree, int jobs = 1, int bound = 7);

// d -> (subgroup classes of Sym(d), vertex-transitive actions).
std::map<int, std::pair<std::uint64_t, std::uint64_t>> census_counts(int d_min, int d_max,
                                                                     int jobs = 1);

struct SimplicityReport {
    bool simple = false;
    bool in_class_s = false; // simple with the compact-generation conditions
    std::vector<std::string> reasons;
};

// Mechanical check of the sufficient conditions: the diagram restricted to
// its minimal cotree must be irreducible with a finite tree graph, every
// retained local action generated by point stabilizers and some of them
// nontrivial, and the restriction must be faithful (trivial local actions
// off the cotree, trivial pointwise stabilizers of retained colours at the
// boundary).  Failed conditions are listed in `reasons`.
SimplicityReport simplicity_report(const LocalActionDiagram& d);

struct ReferenceRow {
    int degree;
    const char* local_action;
    const char* pairing;
    const char* lpc;
    const char* fixed_end;
    const char* quotient;
    const char* plus_local;
};

// The 70 published reference rows for degrees 0 through 5, transcribed
// verbatim (including the five rows whose quotient entries disagree with the
// computed values).
const std::vector<ReferenceRow>& reference_rows();

// Published reference counts (subgroup classes, vt actions) for degrees
// beyond what this toolkit recomputes; recorded data, not computed.
const std::map<int, std::pair<std::uint64_t, std::uint64_t>>& reference_counts();

struct ErratumEntry {
    int degree;
    std::string local_action;
    std::string pairing;
    std::string printed_value;
    std::string computed_value;
};

// Rows of the reference tables whose printed quotient column differs from
// the computed value.
std::vector<ErratumEntry> errata_report(int jobs = 1);

// CSV with header degree,local_action,pairing,lpc,fixed_end,quotient,
// plus_local,flags (flags space-separated).
std::string census_csv(const std::vector<CensusRow>& rows);

// Aligned text table of the same rows.
std::string census_table(const std::vector<CensusRow>& rows);

// Worker count from the LAD_JOBS environment variable, else `fallback`,
// else the hardware concurrency when `fallback` is 0.
int jobs_from_env_or(int fallback);

} // namespace lad
