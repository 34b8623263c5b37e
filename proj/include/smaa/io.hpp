#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "smaa/stats.hpp"
#include "smaa/types.hpp"

//! Plain-text formats for every artifact the batch tools exchange: CSV for
//! matrices, samples, masses and index grids, a line-oriented statement format
//! for preferences.  Numbers are written in the shortest form that parses back
//! to the identical double, so write-read round trips are exact.
namespace smaa {

//! Shortest decimal text that parses back to exactly x.
std::string format_double(double x);

//! Strict full-token parse; throws std::runtime_error naming `what` on junk.
double parse_double(const std::string& text, const std::string& what);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// ---- performance matrices ------------------------------------------------------
// header "alt,g1,...,gn", one labeled row per alternative

PerformanceMatrix read_performance_csv(std::istream& in);
void write_performance_csv(std::ostream& out, const PerformanceMatrix& perf);

// ---- weight samples --------------------------------------------------------------
// header "w1,...,wn", one weight vector per row

OmegaSample read_omega_csv(std::istream& in);
void write_omega_csv(std::ostream& out, const OmegaSample& omega);

// ---- masses ----------------------------------------------------------------------
// header "mass", one value per sample member

Vector read_masses_csv(std::istream& in);
void write_masses_csv(std::ostream& out, const Vector& masses);

// ---- generic single-column values ------------------------------------------------

std::vector<double> read_value_column_csv(std::istream& in, const std::string& name);
void write_value_column_csv(std::ostream& out, const std::string& name,
                            const std::vector<double>& values);

// ---- index grids -----------------------------------------------------------------

//! header "rank,<labels...>"; row r holds the mass of each alternative at rank r.
void write_rai_csv(std::ostream& out, const PerformanceMatrix& perf, const Matrix& rai);

//! header "from/to,<labels...>"; cell (a, b) holds the winning mass of a over b.
void write_pwi_csv(std::ostream& out, const PerformanceMatrix& perf, const Matrix& pwi);

// ---- preference statements ---------------------------------------------------------
// One statement per line, alternatives by label, '#' starts a comment:
//   strict a1 a2          certain: a1 strictly preferred to a2
//   indiff a1 a3          certain indifference
//   intensity a1 a2 a3 a4 certain: (a1 over a2) more intense than (a3 over a4)
//   u_strict a2 a4        uncertain counterparts of the three forms above
//   u_indiff ...
//   u_intensity ...

PreferenceInfo read_preferences(std::istream& in, const PerformanceMatrix& perf);
void write_preferences(std::ostream& out, const PerformanceMatrix& perf,
                       const PreferenceInfo& prefs);

// ---- decision tables ----------------------------------------------------------------

//! Method-by-method grid of "h/p" cells for the equal-distributions tests;
//! cells outside the tested upper triangle print "-".
void write_ks_equal_csv(std::ostream& out, const KsTable& table);

//! Full off-diagonal grid for the one-sided tests; untested cells print "-".
void write_ks_greater_csv(std::ostream& out, const KsTable& table);

}  // namespace smaa
