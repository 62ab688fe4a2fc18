#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "popdyn/errors.hpp"
#include "popdyn/ioutil.hpp"
#include "popdyn/trace_csv.hpp"

using namespace popdyn;

TEST_CASE("multi-video files with sparse days") {
    std::istringstream in(
        "video_id,day,views\n"
        "vid-b,0,10\n"
        "vid-a,5,2.5\n"
        "vid-b,2,7\n"
        "vid-a,1,4\n");
    const auto traces = read_view_traces(in, "test");
    REQUIRE(traces.size() == 2);
    CHECK(traces[0].video_id == "vid-a");  // sorted by id
    CHECK(traces[0].counts == std::vector<double>{0.0, 4.0, 0.0, 0.0, 0.0, 2.5});
    CHECK(traces[1].video_id == "vid-b");
    CHECK(traces[1].counts == std::vector<double>{10.0, 0.0, 7.0});
}

TEST_CASE("quoted ids and CRLF endings") {
    std::istringstream in(
        "video_id,day,views\r\n"
        "\"name, with comma\",0,3\r\n");
    const auto traces = read_view_traces(in, "test");
    REQUIRE(traces.size() == 1);
    CHECK(traces[0].video_id == "name, with comma");
    CHECK(traces[0].counts == std::vector<double>{3.0});
}

TEST_CASE("parse errors carry the line number") {
    auto expect_line = [](const std::string& content, long want_line) {
        std::istringstream in(content);
        try {
            read_view_traces(in, "test");
            FAIL("expected CsvParseError");
        } catch (const CsvParseError& e) {
            CHECK(e.line() == want_line);
        }
    };
    expect_line("video_id;day;views\nv,0,1\n", 1);                    // bad header
    expect_line("video_id,day,views\nv,0,1\nv,zero,2\n", 3);          // bad day
    expect_line("video_id,day,views\nv,-1,1\n", 2);                   // negative day
    expect_line("video_id,day,views\nv,0,many\n", 2);                 // bad views
    expect_line("video_id,day,views\nv,0,-5\n", 2);                   // negative views
    expect_line("video_id,day,views\nv,0,1\nv,0,2\n", 3);             // duplicate day
    expect_line("video_id,day,views\nv,0\n", 2);                      // missing field
    expect_line("", 1);                                               // empty file
}

TEST_CASE("content digests are stable") {
    CHECK(digest_string("") == "fnv1a64:cbf29ce484222325");
    CHECK(digest_string("a") == "fnv1a64:af63dc4c8601ec8c");
    CHECK(digest_string("hello") == digest_string("hello"));
    CHECK(digest_string("hello") != digest_string("hello!"));
}

TEST_CASE("doubles serialize losslessly") {
    for (const double v : {0.1, 1.0 / 3.0, 6262.50625, 1e-300, -2.5e17}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);
    }
}
