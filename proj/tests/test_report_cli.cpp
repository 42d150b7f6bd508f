#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "tokscope/io.hpp"
#include "tokscope/report.hpp"

using namespace tokscope;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("tokscope-cli-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p.string();
    }
};

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(TOKSCOPE_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

const char* kToyTokenizer = R"({
    "name": "toy", "byte_level": false,
    "vocab": {"a": 0, "b": 1, "c": 2, "ab": 3},
    "merges": ["a b"],
    "added_tokens": []
})";

}  // namespace

TEST_CASE("markdown rounds to two decimals, machine formats keep precision") {
    report::Table table;
    table.columns = {"name", "ratio", "value"};
    table.add_row({report::Cell::of_text("row"), report::Cell::of_ratio(1, 3),
                   report::Cell::of_number(2.5)});

    const std::string md = report::to_markdown(table);
    REQUIRE(md.find("| 0.33 |") != std::string::npos);
    REQUIRE(md.find("| 2.50 |") != std::string::npos);

    const std::string csv = report::to_csv(table);
    REQUIRE(csv.find("0.33333333333333331") != std::string::npos);

    const auto json = report::to_json(table);
    REQUIRE(json[0]["ratio"]["numerator"] == 1);
    REQUIRE(json[0]["ratio"]["denominator"] == 3);
    REQUIRE(json[0]["ratio"]["value"].get<double>() == 1.0 / 3.0);
    REQUIRE(json[0]["value"].get<double>() == 2.5);
}

TEST_CASE("csv escapes commas and quotes") {
    report::Table table;
    table.columns = {"a", "b"};
    table.add_row({report::Cell::of_text("x,y"), report::Cell::of_text("say \"hi\"")});
    const std::string csv = report::to_csv(table);
    REQUIRE(csv.find("\"x,y\"") != std::string::npos);
    REQUIRE(csv.find("\"say \"\"hi\"\"\"") != std::string::npos);
}

TEST_CASE("rows must match the header width") {
    report::Table table;
    table.columns = {"only"};
    REQUIRE_THROWS_AS(table.add_row({report::Cell::of_text("a"), report::Cell::of_text("b")}), Error);
}

TEST_CASE("cli: evaluate prints a markdown table with rounded fertility") {
    TempDir dir;
    const std::string tok = dir.file("toy.json", kToyTokenizer);
    const std::string corpus = dir.file("c.txt", "a b ab\n");
    const auto result = run_cli("evaluate --tokenizer " + tok + " --corpus " + corpus +
                                " --language en --domain formal");
    CAPTURE(result.output);
    REQUIRE(result.exit_code == 0);
    REQUIRE(result.output.find("| 1.00 |") != std::string::npos);
    REQUIRE(result.output.find("toy fertility") != std::string::npos);
    REQUIRE(result.output.find("formal") != std::string::npos);
}

TEST_CASE("cli: evaluate json matches a second run byte for byte") {
    TempDir dir;
    const std::string tok = dir.file("toy.json", kToyTokenizer);
    const std::string corpus = dir.file("c.txt", "abc abc\nab c\n");
    const std::string cmd = "evaluate --tokenizer " + tok + " --corpus " + corpus + " --format json";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    REQUIRE(first.exit_code == 0);
    REQUIRE(first.output == second.output);
    const auto parsed = nlohmann::json::parse(first.output);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed[0]["tokenizer"] == "toy");
    REQUIRE(parsed[0]["fertility"]["numerator"] == 6);
    REQUIRE(parsed[0]["fertility"]["denominator"] == 4);
}

TEST_CASE("cli: missing required flags exit 2 with usage text") {
    const auto result = run_cli("evaluate --corpus nowhere.txt");
    REQUIRE(result.exit_code == 2);
    REQUIRE(result.output.find("--tokenizer") != std::string::npos);

    const auto nothing = run_cli("");
    REQUIRE(nothing.exit_code == 2);
}

TEST_CASE("cli: data errors exit 1 and name the file") {
    TempDir dir;
    const std::string tok = dir.file("toy.json", kToyTokenizer);
    const auto result = run_cli("evaluate --tokenizer " + tok + " --corpus " +
                                (dir.path / "missing.txt").string());
    REQUIRE(result.exit_code == 1);
    REQUIRE(result.output.find("missing.txt") != std::string::npos);
}

TEST_CASE("cli: strr reports the toy example and its failures") {
    TempDir dir;
    const std::string tok = dir.file("toy.json", kToyTokenizer);
    const std::string list = dir.file("words.txt", "ab\nac\n");
    const auto result = run_cli("strr --tokenizer " + tok + " --wordlist " + list + " --failures");
    CAPTURE(result.output);
    REQUIRE(result.exit_code == 0);
    REQUIRE(result.output.find("50.00") != std::string::npos);
    REQUIRE(result.output.find("ac -> 2 tokens") != std::string::npos);
}

TEST_CASE("cli: strr json emits plot-ready series") {
    TempDir dir;
    const std::string tok = dir.file("toy.json", kToyTokenizer);
    const std::string list = dir.file("en-fr.tsv", "ab\tab\nc\tac\n");
    const auto result = run_cli("strr --tokenizer " + tok + " --wordlist " + list + " --format json");
    CAPTURE(result.output);
    REQUIRE(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.output);
    REQUIRE(parsed["labels"] == nlohmann::json::array({"toy"}));
    REQUIRE(parsed["series"].size() == 2);
    REQUIRE(parsed["series"][0]["language"] == "en");
    REQUIRE(parsed["series"][0]["data"][0].get<double>() == 100.0);
    REQUIRE(parsed["series"][1]["language"] == "fr");
    REQUIRE(parsed["series"][1]["data"][0].get<double>() == 50.0);
}

TEST_CASE("cli: strr all-policies adds one row per policy") {
    TempDir dir;
    // space-prefixed probing needs a byte-level tokenizer; train one first
    const std::string corpus = dir.file("c.txt", "ab ab cd\n");
    const std::string tok = (dir.path / "byte.json").string();
    REQUIRE(run_cli("train --corpus " + corpus + " --vocab-size 257 --out-tokenizer " + tok)
                .exit_code == 0);
    const std::string list = dir.file("w.txt", "ab\n");
    const auto result = run_cli("strr --tokenizer " + tok + " --wordlist " + list +
                                " --word-policy all-policies --format csv");
    CAPTURE(result.output);
    REQUIRE(result.exit_code == 0);
    REQUIRE(result.output.find("bare") != std::string::npos);
    REQUIRE(result.output.find("space-prefixed") != std::string::npos);
    REQUIRE(result.output.find("either") != std::string::npos);
}

TEST_CASE("cli: inject writes a loadable tokenizer and a plan") {
    TempDir dir;
    const std::string tok = dir.file("toy.json", kToyTokenizer);
    const std::string list = dir.file("w.txt", "ab\nac\n");
    const std::string out = (dir.path / "expanded.json").string();
    const std::string plan = (dir.path / "plan.json").string();
    const auto result = run_cli("inject --tokenizer " + tok + " --wordlist " + list +
                                " --out-tokenizer " + out + " --plan-out " + plan);
    CAPTURE(result.output);
    REQUIRE(result.exit_code == 0);
    REQUIRE(result.output.find("50.00 -> 100.00") != std::string::npos);
    REQUIRE(result.output.find("next steps") != std::string::npos);

    const Tokenizer expanded = io::load_tokenizer(out);
    REQUIRE(expanded.vocab_size() == 5);
    REQUIRE(expanded.encode_word("ac").size() == 1);

    std::ifstream plan_in(plan);
    nlohmann::json plan_json;
    plan_in >> plan_json;
    REQUIRE(plan_json["candidates"] == nlohmann::json::array({"ac"}));
    REQUIRE(plan_json["injected"] == nlohmann::json::array({"ac"}));
    REQUIRE(plan_json["strr_before"].get<double>() == 50.0);
    REQUIRE(plan_json["strr_after"].get<double>() == 100.0);
}

TEST_CASE("cli: inject refuses to overwrite its input") {
    TempDir dir;
    const std::string tok = dir.file("toy.json", kToyTokenizer);
    const std::string list = dir.file("w.txt", "ac\n");
    const auto result =
        run_cli("inject --tokenizer " + tok + " --wordlist " + list + " --out-tokenizer " + tok);
    REQUIRE(result.exit_code == 1);
    REQUIRE(result.output.find("refuses") != std::string::npos);
}

TEST_CASE("cli: coverage lists every distinct word at target 1.0") {
    TempDir dir;
    const std::string corpus = dir.file("c.txt", "x x y z\n");
    const auto result = run_cli("coverage --corpus " + corpus + " --target 1.0");
    CAPTURE(result.output);
    REQUIRE(result.exit_code == 0);
    REQUIRE(result.output.find("rank,word,count,cumulative_coverage") != std::string::npos);
    REQUIRE(result.output.find("1,x,2,") != std::string::npos);
    REQUIRE(result.output.find("3 of 3 distinct words") != std::string::npos);
}

TEST_CASE("cli: train writes a tokenizer whose first merge is the frequent pair") {
    TempDir dir;
    const std::string corpus = dir.file("c.txt", "ab ab ab\n");
    const std::string out = (dir.path / "trained.json").string();
    const auto result = run_cli("train --corpus " + corpus + " --vocab-size 3 --out-tokenizer " + out +
                                " --char-level");
    CAPTURE(result.output);
    REQUIRE(result.exit_code == 0);

    std::ifstream in(out);
    nlohmann::json file;
    in >> file;
    REQUIRE(file["merges"][0] == "a b");

    const Tokenizer trained = io::load_tokenizer(out);
    REQUIRE(trained.encode_word("ab").size() == 1);
}

TEST_CASE("cli: unreadable tokenizer json exits 1 naming the file") {
    TempDir dir;
    const std::string bad = dir.file("bad.json", "{broken");
    const auto result = run_cli("strr --tokenizer " + bad + " --wordlist " + bad);
    REQUIRE(result.exit_code == 1);
    REQUIRE(result.output.find("bad.json") != std::string::npos);
}
