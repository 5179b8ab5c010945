#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sbs/chrono_util.hpp"
#include "sbs/corpus_io.hpp"
#include "sbs/csv.hpp"
#include "sbs/errors.hpp"
#include "sbs/stopwords.hpp"

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("sbs_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const std::string p = (path / name).string();
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
};

}  // namespace

TEST_SUITE("chrono") {

TEST_CASE("rfc3339 round trip") {
    const auto ts = sbs::parse_rfc3339("2017-07-01T12:30:45Z");
    REQUIRE(ts.has_value());
    CHECK(sbs::format_rfc3339(*ts) == "2017-07-01T12:30:45Z");
}

TEST_CASE("offsets shift into utc") {
    CHECK(*sbs::parse_rfc3339("2017-07-01T02:00:00+02:00") == *sbs::parse_rfc3339("2017-07-01T00:00:00Z"));
    CHECK(*sbs::parse_rfc3339("2016-12-31T23:30:00-01:00") == *sbs::parse_rfc3339("2017-01-01T00:30:00Z"));
}

TEST_CASE("bare dates and fractional seconds") {
    CHECK(*sbs::parse_rfc3339("1970-01-02") == 86400);
    CHECK(*sbs::parse_rfc3339("1970-01-01T00:00:01.750Z") == 1);
}

TEST_CASE("rejects malformed input") {
    for (const char* bad : {"", "yesterday", "2017-13-01", "2017-02-30", "2017-07-01T25:00:00Z",
                            "2017-07-01T10:00:00", "2017-7-1", "2017-07-01T10:00:00junk"}) {
        CAPTURE(bad);
        CHECK_FALSE(sbs::parse_rfc3339(bad).has_value());
    }
}

TEST_CASE("iso week edges") {
    // 2016-01-01 was a Friday and belongs to 2015-W53.
    const auto week = sbs::iso_week_from_days(*sbs::parse_rfc3339("2016-01-01") / 86400);
    CHECK(week.year == 2015);
    CHECK(week.week == 53);
    // 2018-12-31 is a Monday of 2019-W01.
    const auto week2 = sbs::iso_week_from_days(*sbs::parse_rfc3339("2018-12-31") / 86400);
    CHECK(week2.year == 2019);
    CHECK(week2.week == 1);
}

}  // TEST_SUITE

TEST_SUITE("corpus_io") {

TEST_CASE("jsonl happy path") {
    TempDir tmp;
    const auto path = tmp.file("c.jsonl",
                               R"({"id":"a","text":"hello world","timestamp":"2020-01-01T00:00:00Z"})"
                               "\n"
                               R"({"id":"b","text":"second","timestamp":"2020-01-02T00:00:00Z"})"
                               "\n");
    const auto docs = sbs::read_corpus_jsonl(path);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].id == "a");
    CHECK(docs[0].text == "hello world");
    CHECK(docs[1].timestamp == *sbs::parse_rfc3339("2020-01-02T00:00:00Z"));
}

TEST_CASE("jsonl errors carry file and line") {
    TempDir tmp;
    const auto bad_json = tmp.file("bad.jsonl", "{\"id\":\"a\"\n");
    CHECK_THROWS_WITH_AS((void)sbs::read_corpus_jsonl(bad_json),
                         doctest::Contains("bad.jsonl:1"), sbs::IngestionError);

    const auto bad_ts = tmp.file(
        "ts.jsonl", R"({"id":"a","text":"x","timestamp":"not a date"})" "\n");
    CHECK_THROWS_WITH_AS((void)sbs::read_corpus_jsonl(bad_ts), doctest::Contains("ts.jsonl:1"),
                         sbs::IngestionError);

    const auto dup = tmp.file("dup.jsonl",
                              R"({"id":"a","text":"x","timestamp":"2020-01-01"})" "\n"
                              R"({"id":"a","text":"y","timestamp":"2020-01-02"})" "\n");
    CHECK_THROWS_WITH_AS((void)sbs::read_corpus_jsonl(dup), doctest::Contains("dup.jsonl:2"),
                         sbs::IngestionError);

    CHECK_THROWS_AS((void)sbs::read_corpus_jsonl(tmp.path.string() + "/missing.jsonl"),
                    sbs::IngestionError);
}

TEST_CASE("csv corpus with quoted fields and any column order") {
    TempDir tmp;
    const auto path = tmp.file("c.csv",
                               "timestamp,text,id\n"
                               "2020-01-01T00:00:00Z,\"hello, quoted\nworld\",a\n"
                               "2020-01-02T00:00:00Z,plain,b\n");
    const auto docs = sbs::read_corpus_csv(path);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].text == "hello, quoted\nworld");
    CHECK(docs[0].id == "a");
    CHECK(docs[1].id == "b");
}

TEST_CASE("csv corpus header errors") {
    TempDir tmp;
    const auto path = tmp.file("c.csv", "id,body,timestamp\nx,y,2020-01-01\n");
    CHECK_THROWS_WITH_AS((void)sbs::read_corpus_csv(path), doctest::Contains("text"),
                         sbs::IngestionError);
}

TEST_CASE("lexicon loading and validation") {
    TempDir tmp;
    const auto ok = tmp.file("lex.tsv", "# comment\ngood\t0.9\nbad\t-0.75\n");
    const auto lex = sbs::load_polarity_lexicon(ok);
    CHECK(lex.at("good") == doctest::Approx(0.9));
    CHECK(lex.at("bad") == doctest::Approx(-0.75));

    const auto out_of_range = tmp.file("bad.tsv", "word\t1.5\n");
    CHECK_THROWS_WITH_AS((void)sbs::load_polarity_lexicon(out_of_range),
                         doctest::Contains("bad.tsv:1"), sbs::IngestionError);
}

TEST_CASE("stopword file with comments") {
    TempDir tmp;
    const auto path = tmp.file("stop.txt", "# english\nthe\nAND\n\n  was  \n");
    const auto words = sbs::load_stopwords(path);
    CHECK(words.count("the") == 1);
    CHECK(words.count("and") == 1);
    CHECK(words.count("was") == 1);
    CHECK(words.count("# english") == 0);
}

}  // TEST_SUITE

TEST_SUITE("csv_format") {

TEST_CASE("fixed six decimals, dot separator, nan is empty") {
    CHECK(sbs::format_fixed(1.0) == "1.000000");
    CHECK(sbs::format_fixed(2.0 / 17.0) == "0.117647");
    CHECK(sbs::format_fixed(-1.5) == "-1.500000");
    CHECK(sbs::format_fixed(0.0) == "0.000000");
    CHECK(sbs::format_fixed(-0.0) == "0.000000");
    CHECK(sbs::format_fixed(std::nan("")).empty());
}

TEST_CASE("negative zero rounding collapses to plain zero") {
    CHECK(sbs::format_fixed(-1e-12) == "0.000000");
}

TEST_CASE("escaping round trip") {
    const std::vector<std::string> fields = {"plain", "with,comma", "with\"quote", "multi\nline", ""};
    const std::string line = sbs::csv_line(fields);
    const auto parsed = sbs::parse_csv(line + "\n");
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].fields == fields);
}

TEST_CASE("parser line numbers survive embedded newlines") {
    const auto records = sbs::parse_csv("a,b\n\"x\ny\",c\nlast,row\n");
    REQUIRE(records.size() == 3);
    CHECK(records[0].line == 1);
    CHECK(records[1].line == 2);
    CHECK(records[2].line == 4);  // the quoted newline consumed line 3
}

}  // TEST_SUITE
