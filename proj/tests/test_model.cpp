#include "doctest.h"

#include "qirm/config.hpp"
#include "qirm/model.hpp"

#include <algorithm>
#include <sstream>

using namespace qirm;

TEST_CASE("default config is valid")
{
    CHECK(validate(ScenarioConfig{}).empty());
}

TEST_CASE("a_min of zero is reported")
{
    ScenarioConfig c;
    c.a_min = 0;
    const auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "a_min ≥ 1 violated");
}

TEST_CASE("negative duration and zero fanout give two violations")
{
    ScenarioConfig c;
    c.duration = -1.0;
    c.fanout = 0;
    const auto v = validate(c);
    CHECK(v.size() == 2);
    CHECK(std::count(v.begin(), v.end(), "duration > 0 violated") == 1);
    CHECK(std::count(v.begin(), v.end(), "fanout ≥ 1 violated") == 1);
}

TEST_CASE("catalog must match the node count")
{
    ScenarioConfig c;
    c.catalog_size = c.n_nodes + 1;
    CHECK(validate(c).size() == 1);
}

TEST_CASE("keywords round trip and reject malformed text")
{
    CHECK(keyword_for(7) == "kw7");
    CHECK(content_for_keyword("kw7") == 7u);
    CHECK(content_for_keyword("kw0") == 0u);
    CHECK_FALSE(content_for_keyword("kw07"));
    CHECK_FALSE(content_for_keyword("kw"));
    CHECK_FALSE(content_for_keyword("x7"));
    CHECK_FALSE(content_for_keyword("kw-1"));
}

TEST_CASE("strategy names")
{
    CHECK(parse_strategy("qirm") == Strategy::Qirm);
    CHECK(parse_strategy("random_flood") == Strategy::RandomFlood);
    CHECK(parse_strategy("origin_only") == Strategy::OriginOnly);
    CHECK_FALSE(parse_strategy("virat"));
    for (auto s : {Strategy::Qirm, Strategy::RandomFlood, Strategy::OriginOnly}) {
        CHECK(parse_strategy(to_string(s)) == s);
    }
}

TEST_CASE("LRU cache")
{
    ReplicaCache cache(2);
    CHECK_FALSE(cache.insert(1, 1.0));
    CHECK_FALSE(cache.insert(2, 2.0));
    CHECK(cache.full());

    SUBCASE("evicts least recently used")
    {
        CHECK(cache.insert(3, 3.0) == 1u);
        CHECK_FALSE(cache.contains(1));
        CHECK(cache.contains(2));
        CHECK(cache.contains(3));
    }
    SUBCASE("touch protects an entry")
    {
        cache.touch(1);
        CHECK(cache.insert(3, 3.0) == 2u);
        CHECK(cache.contains(1));
    }
    SUBCASE("reinsert refreshes the timestamp without eviction")
    {
        CHECK_FALSE(cache.insert(1, 9.0));
        CHECK(cache.stored_at(1) == 9.0);
        CHECK(cache.size() == 2);
    }
}

TEST_CASE("zero-capacity cache stores nothing")
{
    ReplicaCache cache(0);
    CHECK_FALSE(cache.insert(4, 1.0));
    CHECK(cache.size() == 0);
    CHECK_FALSE(cache.contains(4));
}

TEST_CASE("config text round trip")
{
    ScenarioConfig c;
    c.n_nodes = 12;
    c.catalog_size = 12;
    c.beta = 0.1 + 0.2;
    c.normalize_weights = true;
    c.strategy = Strategy::RandomFlood;
    c.seed = 18446744073709551615ull;
    c.query_rate = 1.0 / 3.0;
    std::stringstream ss;
    write_config(ss, c);
    CHECK(parse_config(ss) == c);
}

TEST_CASE("config parser")
{
    SUBCASE("comments, blanks and partial files")
    {
        std::istringstream in("# scenario\n\nn_nodes = 8\ncatalog_size=8\n  strategy = origin_only  \n");
        const auto c = parse_config(in);
        CHECK(c.n_nodes == 8);
        CHECK(c.strategy == Strategy::OriginOnly);
        CHECK(c.beta == ScenarioConfig{}.beta);
    }
    SUBCASE("unknown key")
    {
        std::istringstream in("n_nodes = 8\nbogus = 1\n");
        CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("line 2"), ConfigError);
    }
    SUBCASE("malformed values")
    {
        for (const char* text : {"n_nodes = eight\n", "beta = 1.0x\n", "normalize_weights = maybe\n",
                                 "strategy = virat\n", "n_nodes\n", "n_nodes = -3\n"}) {
            std::istringstream in(text);
            CHECK_THROWS_AS(parse_config(in), ConfigError);
        }
    }
}

TEST_CASE("format_double is shortest round trip")
{
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(3.0) == "3");
    const double x = 1.0 / 3.0;
    CHECK(std::stod(format_double(x)) == x);
}
