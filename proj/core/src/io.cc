#include "jury/io.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "jury/error.h"

namespace jury {
namespace {

std::string_view Trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void ParseFail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

double ParseNumber(std::string_view field, std::size_t line, const char* column) {
  const std::string text(field);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    ParseFail(line, std::string("column '") + column + "' is not a number: '" + text + "'");
  }
  return v;
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  return in;
}

std::string FormatRoundTrip(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Juror> ReadJurorCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  int id_col = -1, eps_col = -1, req_col = -1;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto header = SplitCsv(line);
    columns = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto name = header[i];
      if ((name == "id" || name == "username") && id_col < 0) id_col = static_cast<int>(i);
      if (name == "epsilon") eps_col = static_cast<int>(i);
      if (name == "requirement") req_col = static_cast<int>(i);
    }
    break;
  }
  if (columns == 0) throw Error(ErrorCode::kParseError, "missing CSV header");
  if (id_col < 0 || eps_col < 0) {
    ParseFail(line_no, "header must name 'id' (or 'username') and 'epsilon'");
  }

  std::vector<Juror> jurors;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitCsv(line);
    if (fields.size() != columns) {
      ParseFail(line_no, "expected " + std::to_string(columns) + " fields, got " +
                             std::to_string(fields.size()));
    }
    std::string id(fields[id_col]);
    if (id.empty()) ParseFail(line_no, "empty id");
    const double eps = ParseNumber(fields[eps_col], line_no, "epsilon");
    double req = 0.0;
    if (req_col >= 0 && !fields[req_col].empty()) {
      req = ParseNumber(fields[req_col], line_no, "requirement");
    }
    try {
      jurors.push_back(MakeJuror(std::move(id), eps, req));
    } catch (const Error& e) {
      ParseFail(line_no, e.what());
    }
  }
  if (jurors.empty()) throw Error(ErrorCode::kEmptyPool, "no juror rows");
  return jurors;
}

std::vector<Juror> ReadJurorCsvFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ReadJurorCsv(in);
}

void WritePoolCsv(std::ostream& out, const CandidatePool& pool) {
  out << "id,epsilon,requirement\n";
  for (const auto& j : pool.candidates()) {
    out << j.id << ',' << FormatRoundTrip(j.epsilon) << ','
        << FormatRoundTrip(j.requirement) << '\n';
  }
}

std::optional<double> ParseIso8601(std::string_view text) {
  const std::string s(Trim(text));
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double sec = 0.0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) != 3 ||
      consumed != 10) {
    return std::nullopt;
  }
  std::string_view rest = std::string_view(s).substr(10);
  double offset = 0.0;
  if (!rest.empty()) {
    if (rest[0] != 'T' && rest[0] != ' ') return std::nullopt;
    const std::string time(rest.substr(1));
    int used = 0;
    if (std::sscanf(time.c_str(), "%2d:%2d:%lf%n", &h, &mi, &sec, &used) != 3) {
      return std::nullopt;
    }
    std::string_view zone = std::string_view(time).substr(used);
    if (zone == "Z" || zone.empty()) {
      offset = 0.0;
    } else if (zone.size() == 6 && (zone[0] == '+' || zone[0] == '-') && zone[3] == ':') {
      int oh = 0, om = 0;
      if (std::sscanf(std::string(zone.substr(1)).c_str(), "%2d:%2d", &oh, &om) != 2) {
        return std::nullopt;
      }
      offset = (zone[0] == '+' ? 1.0 : -1.0) * (oh * 3600.0 + om * 60.0);
    } else {
      return std::nullopt;
    }
  }
  using namespace std::chrono;
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok() || h > 23 || mi > 59 || sec >= 61.0 || sec < 0.0) return std::nullopt;
  const double days = static_cast<double>(sys_days{date}.time_since_epoch().count());
  return days * 86400.0 + h * 3600.0 + mi * 60.0 + sec - offset;
}

std::vector<TweetRecord> ReadCorpus(std::istream& in) {
  std::vector<TweetRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      ParseFail(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) ParseFail(line_no, "record is not a JSON object");
    const auto author = obj.find("author");
    const auto content = obj.find("content");
    if (author == obj.end() || !author->is_string() || author->get<std::string>().empty()) {
      ParseFail(line_no, "missing or empty string field 'author'");
    }
    if (content == obj.end() || !content->is_string()) {
      ParseFail(line_no, "missing string field 'content'");
    }
    TweetRecord rec{author->get<std::string>(), content->get<std::string>(), std::nullopt};
    if (const auto created = obj.find("author_created_at");
        created != obj.end() && !created->is_null()) {
      if (created->is_number()) {
        rec.author_created_at = created->get<double>();
      } else if (created->is_string()) {
        rec.author_created_at = ParseIso8601(created->get<std::string>());
        if (!rec.author_created_at) {
          ParseFail(line_no, "unparseable author_created_at '" +
                                 created->get<std::string>() + "'");
        }
      } else {
        ParseFail(line_no, "author_created_at must be a string or a number");
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TweetRecord> ReadCorpusFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ReadCorpus(in);
}

void WriteUserCsv(std::ostream& out, const std::vector<UserEstimate>& rows) {
  out << "username,score,hub_score,epsilon,requirement\n";
  for (const auto& r : rows) {
    out << r.username << ',' << FormatRoundTrip(r.score) << ','
        << (r.hub_score ? FormatRoundTrip(*r.hub_score) : std::string()) << ','
        << FormatRoundTrip(r.epsilon) << ',' << FormatRoundTrip(r.requirement) << '\n';
  }
}

std::string FormatProbability(double value) {
  char buf[64];
  if (value != 0.0 && std::abs(value) < 1e-4) {
    std::snprintf(buf, sizeof(buf), "%.11e", value);
  } else {
    std::snprintf(buf, sizeof(buf), "%.12f", value);
  }
  return buf;
}

}  // namespace jury
