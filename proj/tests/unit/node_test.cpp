/*
   Copyright 2026 The NFP Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include <httplib.h>

#include <nfp/contract/nfp_contract.hpp>
#include <nfp/contract/permit.hpp>
#include <nfp/crypto/hash.hpp>
#include <nfp/node/http.hpp>
#include <nfp/node/journal.hpp>

using namespace nfp;
using chain::Json;
using client::Session;
using client::Wallet;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("nfp-node-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

const Wallet kAdmin = Wallet::from_seed("node-admin");
const Wallet kAlice = Wallet::from_seed("node-alice");

chain::ChainConfig node_config() {
    chain::ChainConfig cfg;
    cfg.seed = crypto::sha256(as_bytes("node-test"));
    cfg.accounts = {{kAdmin.address, 50'000'000}, {kAlice.address, 50'000'000}};
    return cfg;
}

// Instantiates the contract and mints `n` tokens to alice; returns the contract.
Address populate(client::ChainClient& c, int n, const std::string& session_tag = "s") {
    Session s{c, crypto::sha256(as_bytes(session_tag))};
    auto inst = s.instantiate(kAdmin, contract::kCodeId, "nfp", {{"minters", {kAdmin.address.str()}}});
    REQUIRE(inst.ok());
    for (int i = 0; i < n; ++i) {
        auto out = s.execute(kAdmin, *inst.contract_address,
                             {{"mint", {{"to", kAlice.address.str()}, {"svg", "<svg xmlns=\"http://www.w3.org/2000/svg\"/>"}}}});
        REQUIRE(out.ok());
    }
    return *inst.contract_address;
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in{p};
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

void write_lines(const fs::path& p, const std::vector<std::string>& lines, bool trailing_newline = true) {
    std::ofstream out{p, std::ios::trunc};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out << lines[i];
        if (i + 1 < lines.size() || trailing_newline) out << '\n';
    }
}

}  // namespace

TEST_CASE("journal reopens to the same state") {
    TempDir dir;
    const auto path = dir.path / "chain.jsonl";
    chain::BlockHeader last;
    Json snapshot;
    Address nfp;
    {
        auto j = node::Journal::create(path, node_config(), contract::code_registry());
        j->set_snapshot_interval(3);
        node::JournalClient c{*j};
        nfp = populate(c, 7);
        last = j->chain().last_block();
        snapshot = j->chain().snapshot();
    }
    const auto lines = read_lines(path);
    const auto count_kind = [&](const std::string& k) {
        return std::count_if(lines.begin(), lines.end(), [&](const auto& l) { return Json::parse(l).at("kind") == k; });
    };
    CHECK(count_kind("genesis") == 1);
    CHECK(count_kind("tx") == 8);
    CHECK(count_kind("block") == 8);
    CHECK(count_kind("snapshot") >= 2);

    SECTION("from the newest snapshot") {
        auto j = node::Journal::open(path, contract::code_registry());
        CHECK(to_hex(j->chain().last_block().hash) == to_hex(last.hash));
        CHECK(j->chain().snapshot() == snapshot);

        // Sessions resume: the next tx extends the same history.
        node::JournalClient c{*j};
        Session s{c, crypto::sha256(as_bytes("after"))};
        CHECK(s.bank_send(kAlice, kAdmin.address, 1).ok());
        CHECK(j->chain().height() == last.height + 1);
    }
    SECTION("from genesis when no snapshot was written") {
        std::vector<std::string> no_snap;
        for (const auto& l : lines) {
            if (Json::parse(l).at("kind") != "snapshot") no_snap.push_back(l);
        }
        write_lines(path, no_snap);
        auto j = node::Journal::open(path, contract::code_registry());
        CHECK(j->chain().snapshot() == snapshot);
    }
    SECTION("a torn final line is dropped") {
        auto torn = lines;
        // Remove the last complete entry and leave a prefix of it behind.
        const std::string tail = torn.back();
        torn.pop_back();
        torn.push_back(tail.substr(0, tail.size() / 2));
        write_lines(path, torn, false);
        auto j = node::Journal::open(path, contract::code_registry());
        // The tail was a block or snapshot entry; everything before it replays.
        CHECK(j->chain().height() >= last.height - 1);
        node::JournalClient c{*j};
        Session s{c, crypto::sha256(as_bytes("after-torn"))};
        CHECK(s.bank_send(kAlice, kAdmin.address, 1).ok());
        for (const auto& l : read_lines(path)) CHECK(Json::accept(l));
    }
    SECTION("tampered history is detected") {
        // Without snapshots every entry is replayed, so the edit cannot hide behind one.
        std::vector<std::string> bad;
        for (const auto& l : lines) {
            if (Json::parse(l).at("kind") != "snapshot") bad.push_back(l);
        }
        for (std::size_t i = bad.size(); i-- > 0;) {
            Json e = Json::parse(bad[i]);
            if (e.at("kind") == "block") {
                e["hash"] = std::string(64, '0');
                bad[i] = e.dump();
                break;
            }
        }
        write_lines(path, bad);
        CHECK_THROWS_AS(node::Journal::open(path, contract::code_registry()), node::JournalError);
    }
    SECTION("corruption before the tail is an error") {
        auto bad = lines;
        bad[1] = "{not json";
        write_lines(path, bad);
        CHECK_THROWS_AS(node::Journal::open(path, contract::code_registry()), node::JournalError);
    }
}

TEST_CASE("journal is single-writer") {
    TempDir dir;
    const auto path = dir.path / "chain.jsonl";
    auto j = node::Journal::create(path, node_config(), contract::code_registry());
    CHECK_THROWS_AS(node::Journal::open(path, contract::code_registry()), node::LockError);
    CHECK_THROWS_AS(node::Journal::create(path, node_config(), contract::code_registry()), node::JournalError);
    j.reset();
    CHECK_NOTHROW(node::Journal::open(path, contract::code_registry()));
    CHECK_THROWS_AS(node::Journal::open(dir.path / "missing.jsonl", contract::code_registry()), node::JournalError);
}

TEST_CASE("http node serves the same chain as an in-process client") {
    chain::Chain chain{node_config(), contract::code_registry()};
    client::LocalClient local{chain};
    node::HttpServer server{chain, local};
    const int port = server.bind("127.0.0.1", 0);
    server.start();
    const std::string url = "http://127.0.0.1:" + std::to_string(port);
    node::HttpClient remote{url};

    CHECK(remote.chain_id() == chain.chain_id());
    CHECK(remote.consensus_pubkey() == chain.consensus_pubkey());

    const Address nfp = populate(remote, 2, "remote");
    CHECK(chain.height() == 3);
    CHECK(remote.height() == 3);
    CHECK(remote.account(kAlice.address).balance == chain.balance(kAlice.address));
    CHECK(remote.account(kAdmin.address).sequence == 3);
    REQUIRE(remote.block(2));
    CHECK(to_hex(remote.block(2)->hash) == to_hex(chain.block(2)->hash));
    CHECK(remote.block(2)->tx_hashes == chain.block(2)->tx_hashes);
    CHECK_FALSE(remote.block(99));

    Session s{remote, crypto::sha256(as_bytes("remote-q"))};
    const auto info = s.query(nfp, {{"num_tokens", Json::object()}});
    CHECK(info.at("count") == 2);

    const auto empty = remote.produce_block();
    CHECK(empty.height == 4);
    CHECK(empty.tx_hashes.empty());

    httplib::Client raw{url};
    SECTION("garbage gets a 400 with an error body") {
        for (const auto& [path, body] : std::vector<std::pair<std::string, std::string>>{
                 {"/broadcast", "not json"},
                 {"/broadcast", "[1,2]"},
                 {"/broadcast", R"({"body":{}})"},
                 {"/query", R"({"contract":"secret1xyz","envelope":"00"})"},
                 {"/query", "{}"},
             }) {
            CAPTURE(path, body);
            auto res = raw.Post(path, body, "application/json");
            REQUIRE(res);
            CHECK(res->status == 400);
            CHECK(Json::parse(res->body).at("error").contains("kind"));
        }
        auto res = raw.Get("/block?height=abc");
        REQUIRE(res);
        CHECK(res->status == 400);
        res = raw.Get("/account/nope");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(chain.height() == 4);
    }
    SECTION("an undecryptable envelope surfaces as a transport error") {
        crypto::Envelope env;
        env.ciphertext = Bytes(40, 0x11);
        CHECK_THROWS_AS(remote.query(nfp, env), crypto::TransportError);
        auto res = raw.Post("/query", Json{{"contract", nfp.str()}, {"envelope", env.hex()}}.dump(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(Json::parse(res->body)["error"]["kind"] == "transport");
    }
    SECTION("browser access") {
        auto res = raw.Get("/consensus_pubkey");
        REQUIRE(res);
        CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
        CHECK(Json::parse(res->body)["pubkey"] == to_hex(chain.consensus_pubkey().bytes()));
        res = raw.Options("/query");
        REQUIRE(res);
        CHECK(res->status == 204);
        CHECK(res->get_header_value("Access-Control-Allow-Headers") == "Content-Type");
    }
    SECTION("connection failure is an HttpError") {
        server.stop();
        CHECK_THROWS_AS(remote.chain_id(), node::HttpError);
    }
}
