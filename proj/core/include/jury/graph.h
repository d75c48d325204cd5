#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jury {

struct TweetRecord {
  std::string author;
  std::string content;
  /// Account creation time in epoch seconds, when known.
  std::optional<double> author_created_at;
};

using RetweetPair = std::pair<std::string, std::string>;

/// Extracts the retweet chain of one tweet. Each "RT @name" marker, in order
/// of appearance, extends the chain author -> name1 -> name2 -> ...; the
/// consecutive links are returned. A username is a maximal run of ASCII
/// letters, digits and '_' (case preserved); a marker without one is
/// ignored.
std::vector<RetweetPair> ParseRetweetChains(const TweetRecord& record);

/// Directed retweet graph. Nodes and edges are kept sorted, so two graphs
/// built from the same records in any order compare equal.
class UserGraph {
 public:
  void AddNode(const std::string& user);
  /// Adds both endpoints; duplicate edges and self-loops are dropped.
  void AddEdge(const std::string& from, const std::string& to);

  const std::set<std::string>& nodes() const { return nodes_; }
  const std::set<RetweetPair>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Dense view: node names in sorted order and edges as index pairs.
  struct Indexed {
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
  };
  Indexed Index() const;

  friend bool operator==(const UserGraph&, const UserGraph&) = default;

 private:
  std::set<std::string> nodes_;
  std::set<RetweetPair> edges_;
};

/// Every author becomes a node, even without retweet links.
UserGraph BuildGraph(std::span<const TweetRecord> corpus);

}  // namespace jury
