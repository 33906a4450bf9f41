// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>

#include "edgemp/errors.hpp"
#include "edgemp/manifest.hpp"

using namespace edgemp;

TEST_SUITE("manifest") {
  TEST_CASE("sha256 test vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  }

  TEST_CASE("artifacts end with a newline and use two-space indent") {
    CHECK(dump_artifact({{"a", 1}}) == "{\n  \"a\": 1\n}\n");
  }

  TEST_CASE("manifest round trip through json and files") {
    RunManifest m;
    m.command = "ising dataset";
    m.argv = {"ising", "dataset", "--topology", "path", "-o", "d.json"};
    m.params = {{"topology", "path"}};
    m.seeds = {{"seed", 3}};
    m.inputs["in.json"] = sha256_hex("x");
    m.outputs["d.json"] = sha256_hex("y");
    CHECK(RunManifest::from_json(m.to_json()) == m);
    CHECK(m.to_json()["version"] == kArtifactVersion);

    const auto dir = std::filesystem::temp_directory_path() / "edgemp-manifest-test";
    std::filesystem::create_directories(dir);
    const auto out = dir / "d.json";
    CHECK(manifest_path_for(out) == dir / "d.json.manifest.json");
    write_manifest(m, manifest_path_for(out));
    CHECK(read_manifest(manifest_path_for(out)) == m);
    write_text_file(out, "hello");
    CHECK(read_text_file(out) == "hello");
    CHECK(sha256_file(out) == sha256_hex("hello"));
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_text_file(dir / "missing.json"), Error);
  }
}
