#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <unistd.h>

#include <gns/io.hpp>

using namespace gns;

namespace {

Point pt(std::vector<int> c) { return Point{std::move(c)}; }

// The running nine-gap example: genus 9, multset {(0,2),(2,1),(3,0)}.
Gns example_gns() {
  return Gns::make(2, {pt({0, 1}), pt({0, 3}), pt({1, 0}), pt({1, 1}), pt({1, 2}),
                       pt({2, 0}), pt({3, 1}), pt({3, 3}), pt({4, 1})});
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* tag) {
    path = (std::filesystem::temp_directory_path() /
            (std::string("gns_io_") + tag + "_" + std::to_string(::getpid()) + ".jsonl"))
               .string();
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("partition JSON") {
  SECTION("roundtrip in several dimensions") {
    const std::vector<MultiPartition> ps = {
        MultiPartition::empty(0),
        MultiPartition::of_value(5),
        MultiPartition::empty(1),
        MultiPartition::from_parts({4, 2, 1}),
        MultiPartition::make(2, {{pt({0, 0}), 3}, {pt({1, 0}), 2}, {pt({0, 1}), 1}}),
    };
    for (const auto& p : ps) CHECK(partition_from_json(partition_to_json(p)) == p);
  }
  SECTION("emitted entries are colex-sorted") {
    const auto p =
        MultiPartition::make(2, {{pt({0, 1}), 1}, {pt({1, 0}), 2}, {pt({0, 0}), 3}});
    const Json j = partition_to_json(p);
    REQUIRE(j.at("entries").size() == 3);
    CHECK(j.at("entries")[0][0] == Json::array({0, 0}));
    CHECK(j.at("entries")[1][0] == Json::array({1, 0}));
    CHECK(j.at("entries")[2][0] == Json::array({0, 1}));
  }
  SECTION("dim-1 shorthand") {
    CHECK(partition_from_json(Json::parse("[4,2,1]")) ==
          MultiPartition::from_parts({4, 2, 1}));
    CHECK(partition_from_json(Json::parse("[]")) == MultiPartition::empty(1));
  }
  SECTION("invalid input is rejected") {
    CHECK_THROWS_AS(partition_from_json(Json::parse("[2,4]")), std::invalid_argument);
    CHECK_THROWS_AS(partition_from_json(Json::parse(
                        R"({"dim":1,"entries":[[[1],4]]})")),
                    std::invalid_argument);  // value increases away from 0
    CHECK_THROWS_AS(partition_from_json(Json::parse(R"({"dim":1})")),
                    Json::exception);
  }
}

TEST_CASE("monoid and multset JSON") {
  SECTION("roundtrip and canonical gap order") {
    const Gns s = example_gns();
    const Json j = gns_to_json(s);
    CHECK(j.at("dim") == 2);
    REQUIRE(j.at("gaps").size() == 9);
    CHECK(j.at("gaps")[0] == Json::array({0, 1}));   // graded-lex first
    CHECK(j.at("gaps")[8] == Json::array({3, 3}));   // and last
    CHECK(gns_from_json(j) == s);
  }
  SECTION("reader canonicalizes permuted input") {
    const Json j = Json::parse(R"({"dim":1,"gaps":[[4],[1],[2]]})");
    const Gns s = gns_from_json(j);
    CHECK(s.genus() == 3);
    CHECK(gns_to_json(s).at("gaps") == Json::parse("[[1],[2],[4]]"));
  }
  SECTION("multset roundtrip") {
    const Multset m = multset(example_gns());
    CHECK(multset_from_json(multset_to_json(m)) == m);
    CHECK(multset_to_json(m).at("points") == Json::parse("[[0,2],[2,1],[3,0]]"));
  }
}

TEST_CASE("labeling JSON") {
  const PartitionLabeling L = labeling_from_gns(example_gns());
  SECTION("roundtrip") {
    CHECK(labeling_from_json(labeling_to_json(L)) == L);
  }
  SECTION("explicit empties and graded-lex grid order") {
    const Json j = labeling_to_json(L);
    CHECK(j.at("dims") == Json::parse("[3,2]"));
    REQUIRE(j.at("labels").size() == 6);
    CHECK(j.at("labels")[0].at("at") == Json::array({0, 0}));
    CHECK(j.at("labels")[0].at("partition").at("entries").empty());
    // every grid point appears, including the empty labels
    long long volume = 1;
    for (int m : L.dims()) volume *= m;
    CHECK(static_cast<long long>(j.at("labels").size()) == volume);
  }
  SECTION("incomplete grids are rejected") {
    Json j = labeling_to_json(L);
    j["labels"].erase(0);
    CHECK_THROWS_AS(labeling_from_json(j), std::invalid_argument);
  }
}

TEST_CASE("count cache lines") {
  CountTable t;
  t.set({"depth2", 2, 30, -1, ""}, BigCount("12459909670309"));
  t.set({"by-depth", 2, 5, 3, ""}, 41);
  t.set({"shape3", 2, 7, -1, "[2,1]"}, 38);

  SECTION("write/read roundtrip") {
    std::stringstream ss;
    write_count_table(ss, t);
    const CountTable back = read_count_table(ss);
    CHECK(back.cells() == t.cells());
  }
  SECTION("documented line shape") {
    std::stringstream ss;
    write_count_table(ss, t);
    std::string line;
    bool found = false;
    while (std::getline(ss, line))
      if (line.find("depth2") != std::string::npos) {
        CHECK(line == R"({"stat":"depth2","d":2,"g":30,"value":"12459909670309"})");
        found = true;
      }
    CHECK(found);
  }
  SECTION("last write wins and blanks are skipped") {
    std::stringstream ss(R"({"stat":"depth2","d":2,"g":4,"value":"7"}

{"stat":"depth2","d":2,"g":4,"value":"48"}
)");
    const CountTable back = read_count_table(ss);
    REQUIRE(back.size() == 1);
    CHECK(*back.get({"depth2", 2, 4, -1, ""}) == 48);
  }
  SECTION("numeric values are tolerated on read") {
    std::stringstream ss(R"({"stat":"total","d":1,"g":3,"value":4})");
    CHECK(*read_count_table(ss).get({"total", 1, 3, -1, ""}) == 4);
  }
  SECTION("file cache: missing, append, reload") {
    TempFile f("cache");
    CHECK(load_count_cache(f.path).size() == 0);
    append_count_cache(f.path, t);
    CHECK(load_count_cache(f.path).cells() == t.cells());
    CountTable more;
    more.set({"depth2", 2, 31, -1, ""}, BigCount("33519288444409"));
    more.set({"depth2", 2, 30, -1, ""}, 1);  // later line overrides
    append_count_cache(f.path, more);
    const CountTable all = load_count_cache(f.path);
    CHECK(all.size() == 4);
    CHECK(*all.get({"depth2", 2, 30, -1, ""}) == 1);
    CHECK(*all.get({"shape3", 2, 7, -1, "[2,1]"}) == 38);
  }
}

TEST_CASE("CSV emitters") {
  SECTION("counts") {
    std::stringstream ss;
    write_counts_csv(ss, {{2, BigCount(4)}, {30, BigCount("12459909670309")}});
    CHECK(ss.str() == "g,value\n2,4\n30,12459909670309\n");
  }
  SECTION("shape3") {
    std::stringstream ss;
    write_shape3_csv(ss, {{10, BigCount(189), BigCount(331)}});
    CHECK(ss.str() == "g,n3,n21\n10,189,331\n");
  }
  SECTION("by-depth") {
    std::stringstream ss;
    write_depth_csv(ss, {{5, 2, BigCount(143)}, {5, 3, BigCount(41)}});
    CHECK(ss.str() == "g,q,value\n5,2,143\n5,3,41\n");
  }
  SECTION("fig5 with 12 significant digits") {
    std::stringstream ss;
    write_fig5_csv(ss, {{2, 0.5, 0.679036986368646}, {87, 1.0 / 87, 1.226209627779}});
    CHECK(ss.str() ==
          "g,inv_g,scaled\n"
          "2,0.5,0.679036986369\n"
          "87,0.0114942528736,1.22620962778\n");
  }
  SECTION("significant-digit formatting") {
    CHECK(format_sig12(0.5) == "0.5");
    CHECK(format_sig12(1.0 / 3) == "0.333333333333");
    CHECK(format_sig12(123456789012345.0) == "1.23456789012e+14");
  }
}
