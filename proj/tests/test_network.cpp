#include <map>
#include <set>

#include "doctest.h"
#include "netring/network.hpp"
#include "netring/ring.hpp"

using namespace netring;

TEST_CASE("m network shape") {
  const auto net = m_network();
  CHECK(net.nodes().size() == 9);
  CHECK(net.edges().size() == 16);
  CHECK(validate_network(net).ok());
  const auto& d = net.demands()[1];
  CHECK(d.receiver == "7");
  CHECK(d.messages == std::vector<std::string>{"W", "Z"});
  // Inputs of node 4 are the edges from 1 then from 2.
  const auto& ins = net.inputs(net.node_index("4"));
  REQUIRE(ins.size() == 2);
  CHECK(net.edges()[ins[0].index].tail == "1");
  CHECK(net.edges()[ins[1].index].tail == "2");
  // Inputs of node 1 are its messages W, X.
  const auto& src = net.inputs(net.node_index("1"));
  REQUIRE(src.size() == 2);
  CHECK(src[0].is_message);
  CHECK(net.messages()[src[1].index].name == "X");
}

TEST_CASE("dim-n counts follow n^n + 2n + 1 and n^n(n^2 - n + 1) + n^2") {
  for (std::uint32_t n = 2; n <= 4; ++n) {
    const auto net = dim_n_network(n);
    std::uint64_t nn = 1;
    for (std::uint32_t i = 0; i < n; ++i) nn *= n;
    CHECK(net.nodes().size() == nn + 2 * n + 1);
    CHECK(net.edges().size() == nn * (n * n - n + 1) + n * n);
    CHECK(validate_network(net).ok());
    std::set<std::vector<std::string>> tuples;
    for (const auto& d : net.demands()) {
      CHECK(net.in_edges(net.node_index(d.receiver)).size() == n * (n - 1) + 1);
      tuples.insert(d.messages);
    }
    CHECK(tuples.size() == nn);
  }
  CHECK(dim_n_network(2).nodes().size() == 9);
  CHECK(dim_n_network(3).edges().size() == 198);
  CHECK_THROWS_AS(dim_n_network(5), BoundExceeded);
}

TEST_CASE("dim-2 equals the m network up to relabelling") {
  const auto d2 = dim_n_network(2);
  const auto m = m_network();
  const std::map<std::string, std::string> node{{"a_1", "1"}, {"a_2", "2"}, {"b_1", "3"}, {"Z", "4"}, {"b_2", "5"},
                                                {"R_1", "6"}, {"R_2", "7"}, {"R_3", "8"}, {"R_4", "9"}};
  const std::map<std::string, std::string> msg{{"x1_1", "W"}, {"x1_2", "X"}, {"x2_1", "Y"}, {"x2_2", "Z"}};
  std::set<std::string> a, b;
  for (const auto& e : d2.edges()) a.insert(node.at(e.tail) + ">" + node.at(e.head));
  for (const auto& e : m.edges()) b.insert(e.tail + ">" + e.head);
  CHECK(a == b);
  for (const auto& d : d2.demands()) {
    std::set<std::string> mapped;
    for (const auto& x : d.messages) mapped.insert(msg.at(x));
    bool found = false;
    for (const auto& e : m.demands())
      if (e.receiver == node.at(d.receiver))
        found = std::set<std::string>(e.messages.begin(), e.messages.end()) == mapped;
    CHECK(found);
  }
}

TEST_CASE("choose-two and trivial networks") {
  auto c3 = choose_two_network(3);
  CHECK(c3.demands().size() == 3);
  auto c5 = choose_two_network(5);
  CHECK(c5.demands().size() == 10);
  CHECK(validate_network(c5).ok());
  auto t = trivial_network();
  CHECK(t.nodes().size() == 2);
  CHECK(t.edges().size() == 1);
  CHECK(t.messages().size() == 1);
  CHECK(validate_network(t).ok());
}

TEST_CASE("validation errors") {
  const auto m = m_network();
  std::vector<Edge> rev;
  for (const auto& e : m.edges()) rev.push_back({e.head, e.tail, e.ordinal});
  rev.push_back({"1", "3", 2});
  rev.push_back({"3", "1", 2});
  Network cyc(m.nodes(), rev, m.messages(), m.demands());
  auto rep = validate_network(cyc);
  CHECK_FALSE(rep.ok());

  Network cyc2({"a", "b", "c"}, {{"a", "b", 1}, {"b", "c", 1}, {"c", "b", 1}}, {{"x", "a"}}, {{"c", {"x"}}});
  rep = validate_network(cyc2);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.errors[0].find("cycle") != std::string::npos);

  Network unreach({"s", "t", "u"}, {{"s", "t", 1}}, {{"x", "s"}}, {{"u", {"x"}}});
  rep = validate_network(unreach);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.errors[0].find("reachability") != std::string::npos);

  Network badowner({"s", "t"}, {{"s", "t", 1}}, {{"x", "t"}}, {{"t", {"x"}}});
  CHECK_FALSE(validate_network(badowner).ok());
}

TEST_CASE("edge keys") {
  const auto net = dim_n_network(3);
  const auto e = parse_edge_key(net, "a_1->b_1:2");
  REQUIRE(e);
  CHECK(net.edges()[*e].ordinal == 2);
  CHECK_FALSE(parse_edge_key(net, "a_1->b_1:3"));
  CHECK(edge_key(net.edges()[*e]) == "a_1->b_1:2");
}
