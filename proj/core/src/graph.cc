#include "jury/graph.h"

#include <algorithm>
#include <string_view>
#include <unordered_map>

#include "jury/error.h"

namespace jury {
namespace {

constexpr std::string_view kMarker = "RT @";

bool IsUsernameChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

std::vector<RetweetPair> ParseRetweetChains(const TweetRecord& record) {
  std::vector<RetweetPair> pairs;
  std::string_view text = record.content;
  std::string last = record.author;
  std::size_t pos = 0;
  while ((pos = text.find(kMarker, pos)) != std::string_view::npos) {
    std::size_t begin = pos + kMarker.size();
    std::size_t end = begin;
    while (end < text.size() && IsUsernameChar(text[end])) ++end;
    if (end > begin) {
      std::string user(text.substr(begin, end - begin));
      pairs.emplace_back(last, user);
      last = std::move(user);
    }
    pos = end > begin ? end : begin;
  }
  return pairs;
}

void UserGraph::AddNode(const std::string& user) { nodes_.insert(user); }

void UserGraph::AddEdge(const std::string& from, const std::string& to) {
  nodes_.insert(from);
  nodes_.insert(to);
  if (from != to) edges_.emplace(from, to);
}

UserGraph::Indexed UserGraph::Index() const {
  Indexed out;
  out.names.assign(nodes_.begin(), nodes_.end());
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(out.names.size());
  for (std::size_t i = 0; i < out.names.size(); ++i) index.emplace(out.names[i], i);
  out.edges.reserve(edges_.size());
  for (const auto& [from, to] : edges_) {
    out.edges.emplace_back(index.at(from), index.at(to));
  }
  return out;
}

UserGraph BuildGraph(std::span<const TweetRecord> corpus) {
  UserGraph graph;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const TweetRecord& record = corpus[i];
    if (record.author.empty()) {
      throw Error(ErrorCode::kParseError,
                  "record " + std::to_string(i) + " has an empty author");
    }
    graph.AddNode(record.author);
    for (const auto& [from, to] : ParseRetweetChains(record)) graph.AddEdge(from, to);
  }
  return graph;
}

}  // namespace jury
