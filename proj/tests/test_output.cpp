#include "shellsort_lab/output.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

using namespace shellsort_lab;

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(7.5), "7.5");
    EXPECT_EQ(format_double(2.0), "2");
    EXPECT_EQ(format_double(-0.0), "-0");
    EXPECT_EQ(format_double(1e300), "1e+300");
    EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_double(std::nan("")), "nan");

    std::mt19937_64 gen(51);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double x = i % 2 ? dist(gen) : dist(gen) * 1e-200;
        const std::string text = format_double(x);
        double back = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), back);
        ASSERT_EQ(res.ptr, text.data() + text.size());
        ASSERT_EQ(back, x) << text;
    }
}

TEST(FormatValue, EachAlternative) {
    EXPECT_EQ(format_value(std::int64_t{-3}), "-3");
    EXPECT_EQ(format_value(std::uint64_t{18446744073709551615ULL}), "18446744073709551615");
    EXPECT_EQ(format_value(true), "true");
    EXPECT_EQ(format_value(std::string("x,y")), "x,y");
    EXPECT_EQ(format_value(std::vector<double>{0.5, 2.0}), "0.5;2");
    EXPECT_EQ(format_value(std::vector<std::int64_t>{1, -2, 3}), "1;-2;3");
    EXPECT_EQ(format_value(std::vector<std::int64_t>{}), "");
}

TEST(RecordWriter, CsvHeaderOnceThenRows) {
    std::ostringstream out;
    RecordWriter w(out, Format::csv);
    OutputRecord a;
    a.command = "psi";
    a.param("h", std::int64_t{5}).param("g", std::int64_t{2}).result("exact", 0.375);
    w.write(a);
    a.parameters[0].value = std::int64_t{7};
    w.write(a);
    EXPECT_EQ(out.str(), "command,seed,h,g,exact\npsi,,5,2,0.375\npsi,,7,2,0.375\n");
}

TEST(RecordWriter, CsvNewHeaderWhenColumnsChange) {
    std::ostringstream out;
    RecordWriter w(out, Format::csv);
    OutputRecord a;
    a.command = "step";
    a.seed = 4;
    a.param("k", std::int64_t{1});
    OutputRecord b;
    b.command = "total";
    b.seed = 4;
    b.result("sum", std::uint64_t{10});
    w.write(a);
    w.write(b);
    w.write(b);
    EXPECT_EQ(out.str(), "command,seed,k\nstep,4,1\ncommand,seed,sum\ntotal,4,10\ntotal,4,10\n");
}

TEST(RecordWriter, CsvEscapesSpecialCharacters) {
    std::ostringstream out;
    RecordWriter w(out, Format::csv);
    OutputRecord a;
    a.command = "x";
    a.result("text", std::string("a,\"b\""));
    w.write(a);
    EXPECT_EQ(out.str(), "command,seed,text\nx,,\"a,\"\"b\"\"\"\n");
}

TEST(RecordWriter, JsonOneObjectPerLine) {
    std::ostringstream out;
    RecordWriter w(out, Format::json);
    OutputRecord a;
    a.command = "simulate";
    a.seed = 9;
    a.param("h", std::int64_t{5})
        .result("mean", 7.12)
        .result("z", -std::numeric_limits<double>::infinity())
        .result("ok", false)
        .result("list", std::vector<double>{0.25, std::nan("")});
    w.write(a);
    OutputRecord b;
    b.command = "psi";
    w.write(b);

    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["command"], "simulate");
    EXPECT_EQ(j["seed"], 9);
    EXPECT_EQ(j["parameters"]["h"], 5);
    EXPECT_EQ(j["results"]["mean"].get<double>(), 7.12);
    EXPECT_EQ(j["results"]["z"], "-inf");
    EXPECT_EQ(j["results"]["ok"], false);
    EXPECT_EQ(j["results"]["list"][0].get<double>(), 0.25);
    EXPECT_EQ(j["results"]["list"][1], "nan");
    // Keys keep insertion order.
    EXPECT_EQ(line.find("\"command\""), 1u);

    std::getline(lines, line);
    const auto k = nlohmann::json::parse(line);
    EXPECT_TRUE(k["seed"].is_null());
    EXPECT_TRUE(k["results"].empty());
    EXPECT_FALSE(std::getline(lines, line));
}

TEST(RecordWriter, Manifest) {
    const std::vector<Field> entries{{"suite", std::string("section10")}, {"g", std::int64_t{3}}, {"scale", 0.01}};
    std::ostringstream csv;
    RecordWriter(csv, Format::csv).write_manifest(entries);
    EXPECT_EQ(csv.str(), "# suite=section10\n# g=3\n# scale=0.01\n");
    std::ostringstream json;
    RecordWriter(json, Format::json).write_manifest(entries);
    EXPECT_EQ(json.str(), "{\"manifest\":{\"suite\":\"section10\",\"g\":3,\"scale\":0.01}}\n");
}
