#pragma once

// File formats:
//   pool CSV   header naming at least `id` (or `username`) and `epsilon`;
//              `requirement` is optional (0 when absent). Extra columns are
//              ignored, so the user CSV below is also a valid pool.
//   user CSV   username,score,hub_score,epsilon,requirement
//   corpus     newline-delimited JSON objects with `author`, `content` and
//              optional `author_created_at` (ISO-8601 or epoch seconds).

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jury/estimate.h"
#include "jury/graph.h"
#include "jury/juror.h"
#include "jury/solver.h"

namespace jury {

/// Reads juror rows in file order. Throws kParseError (with the line number)
/// on malformed input and kEmptyPool when there are no rows.
std::vector<Juror> ReadJurorCsv(std::istream& in);
std::vector<Juror> ReadJurorCsvFile(const std::string& path);

/// Writes `id,epsilon,requirement` with round-trip precision.
void WritePoolCsv(std::ostream& out, const CandidatePool& pool);

/// Throws kParseError naming the 1-based line of the offending record.
std::vector<TweetRecord> ReadCorpus(std::istream& in);
std::vector<TweetRecord> ReadCorpusFile(const std::string& path);

/// "2009-06-01T12:30:00Z", "2009-06-01T12:30:00+02:00", "2009-06-01" and
/// fractional seconds are accepted. Returns epoch seconds.
std::optional<double> ParseIso8601(std::string_view text);

void WriteUserCsv(std::ostream& out, const std::vector<UserEstimate>& rows);

/// Twelve decimals ("0.072000000000"); values below 1e-4 switch to
/// scientific notation with twelve significant digits so tiny tails stay
/// distinguishable.
std::string FormatProbability(double value);

}  // namespace jury
