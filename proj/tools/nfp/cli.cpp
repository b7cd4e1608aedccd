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

#include "cli.hpp"

#include <signal.h>
#include <sys/stat.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include <nfp/codec/gzip.hpp>
#include <nfp/contract/nfp_contract.hpp>
#include <nfp/contract/permit.hpp>
#include <nfp/crypto/hash.hpp>
#include <nfp/game/board.hpp>
#include <nfp/node/http.hpp>
#include <nfp/node/journal.hpp>
#include <nfp/svg/bundle.hpp>
#include <nfp/svg/svg.hpp>

#ifndef NFP_DEFAULT_ASSETS_DIR
#define NFP_DEFAULT_ASSETS_DIR "assets"
#endif

namespace nfp::cli {

namespace {

    namespace fs = std::filesystem;
    using chain::Json;
    using chain::Uscrt;
    using client::Wallet;

    //! Bad input from the operator: exit code 2.
    class UserError : public Error {
      public:
        using Error::Error;
    };

    constexpr const char* kDefaultNode = "http://127.0.0.1:26657";
    constexpr const char* kPermitName = "nfp-cli";
    constexpr Uscrt kDefaultGenesisBalance = 1'000'000'000'000;

    std::string read_file(const fs::path& p) {
        std::ifstream in{p, std::ios::binary};
        if (!in) throw UserError("cannot read " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_file(const fs::path& p, std::string_view data, bool secret = false) {
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        std::ofstream out{p, std::ios::binary | std::ios::trunc};
        if (!out) throw UserError("cannot write " + p.string());
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.close();
        if (secret) ::chmod(p.c_str(), 0600);
    }

    std::string mime_for(const fs::path& p) {
        static const std::map<std::string, std::string> kTypes{
            {".webp", "image/webp"}, {".png", "image/png"},       {".jpg", "image/jpeg"},  {".jpeg", "image/jpeg"}, {".gif", "image/gif"},
            {".svg", "image/svg+xml"}, {".woff2", "font/woff2"}, {".woff", "font/woff"}, {".json", "application/json"}, {".css", "text/css"},
            {".txt", "text/plain"},  {".wasm", "application/wasm"}};
        const auto it = kTypes.find(p.extension().string());
        return it == kTypes.end() ? "application/octet-stream" : it->second;
    }

    //! Options shared by every subcommand; a replay line starts from the outer values.
    struct Options {
        std::string home;
        std::string node;
        std::string output{"json"};
        std::string seed;
        std::string signer;
        std::string contract;
        std::string fee_granter;
        Uscrt fee{5'000};
        bool dry_run{false};
    };

    //! State that outlives a single command: the open chain and the home configuration.
    class Runner {
      public:
        Runner(std::ostream& out, std::ostream& err) : out_{out}, err_{err} {}

        struct Result {
            int code{kOk};
            Json value;
            std::string error;       // diagnostic for exit codes != 0
            std::string error_kind;  // contract error kind, when there is one
            std::string raw;         // printed verbatim instead of `value` (dry runs)
        };

        //! Parses and runs one command without printing its result.
        Result invoke(const std::vector<std::string>& args, const Options& defaults);
        //! invoke() plus output; returns the exit code.
        int dispatch(const std::vector<std::string>& args, const Options& defaults);

      private:
        // ---- environment ----
        fs::path home() const { return fs::path{opts_.home}; }
        fs::path config_path() const { return home() / "config.json"; }
        fs::path key_path(const std::string& name) const { return home() / "keys" / (name + ".json"); }

        Json& config() {
            if (!config_) {
                config_ = fs::exists(config_path()) ? Json::parse(read_file(config_path())) : Json::object();
                config_home_ = opts_.home;
            }
            return *config_;
        }
        void save_config() { write_file(config_path(), config().dump(2) + "\n"); }

        std::string node_url() {
            if (!opts_.node.empty()) return opts_.node;
            return config().value("node", std::string{});
        }

        client::ChainClient& chain() {
            if (client_) return *client_;
            const std::string url = node_url();
            if (!url.empty()) {
                http_ = std::make_unique<node::HttpClient>(url);
                client_ = http_.get();
            } else {
                const fs::path state = home() / config().value("state", std::string{"chain.jsonl"});
                if (!fs::exists(state)) throw UserError("no chain at " + state.string() + "; run `nfp init` or pass --node");
                journal_ = node::Journal::open(state, contract::code_registry());
                journal_client_ = std::make_unique<node::JournalClient>(*journal_);
                client_ = journal_client_.get();
            }
            return *client_;
        }

        std::uint64_t height() {
            chain();
            return journal_ ? journal_->chain().height() : http_->height();
        }

        Wallet wallet(const std::string& name) {
            const std::string n = name.empty() ? config().value("default_key", std::string{}) : name;
            if (n.empty()) throw UserError("no signer: pass --as NAME or set a default key");
            if (!fs::exists(key_path(n))) throw UserError("unknown key '" + n + "'");
            const Json k = Json::parse(read_file(key_path(n)));
            return Wallet::from_key(crypto::PrivateKey::from_bytes(from_hex(k.at("private_key").get<std::string>())));
        }

        Address address_of(const std::string& who) {
            if (who.starts_with(Address::kHrp)) return Address::parse(who);
            return wallet(who).address;
        }

        Address contract() {
            const std::string c = !opts_.contract.empty() ? opts_.contract : config().value("contract", std::string{});
            if (c.empty()) throw UserError("no contract: run `nfp instantiate` or pass --contract");
            return Address::parse(c);
        }

        //! Ephemeral envelope keys are seeded from --seed, the chain height and the command
        //! line so scripted runs replay exactly; otherwise from the OS.
        client::Session session() {
            Hash256 seed{};
            if (opts_.seed.empty()) {
                crypto::os_random(seed);
            } else {
                // The counter keeps several sessions within one command on distinct keys.
                std::string material = opts_.seed + '\0' + std::to_string(height()) + '\0' + std::to_string(sessions_++);
                for (const auto& a : args_) material += '\0' + a;
                seed = crypto::sha256(as_bytes(material));
            }
            return client::Session{chain(), seed};
        }

        Json query(const Json& msg, bool with_permit) {
            auto s = session();
            const Address c = contract();
            if (!with_permit) return s.query(c, msg);
            const Wallet w = wallet(opts_.signer);
            contract::PermitParams params{kPermitName, {c}, {"owner", "packages", "notifications", "game_state"}, chain().chain_id()};
            return s.query(c, contract::with_permit(contract::sign_permit(params, w.key), msg));
        }

        //! One command, one transaction.
        Json mutate(const std::vector<Json>& chain_msgs, const std::vector<client::ContractCall>& calls, const Wallet* signer = nullptr) {
            const Wallet w = signer ? *signer : wallet(opts_.signer);
            client::TxOptions tx_opts;
            tx_opts.fee = opts_.fee;
            if (!opts_.fee_granter.empty()) tx_opts.fee_granter = address_of(opts_.fee_granter);
            auto s = session();
            auto out = s.broadcast(w, chain_msgs, calls, tx_opts, opts_.dry_run);
            if (opts_.dry_run) {
                dry_run_payload_ = chain::canonical(out.signed_tx);
                return out.signed_tx;
            }
            Json result = Json::object();
            if (calls.empty()) {
                if (!out.ok()) throw client::TxRejected(out.tx.code, out.tx.log);
            } else {
                result = out.data();
            }
            Json j{{"tx_hash", to_hex(out.tx.tx_hash)}, {"height", out.tx.height}, {"gas_used", out.tx.gas_used}, {"result", result}};
            if (out.contract_address) j["contract"] = out.contract_address->str();
            return j;
        }

        Json execute(const Json& msg, Uscrt funds = 0) {
            client::ContractCall call;
            call.contract = contract();
            call.msg = msg;
            call.funds = funds;
            return mutate({}, {call});
        }

        void emit(const Json& j, const std::string& output) {
            if (j.is_null()) return;
            if (output == "table" && j.is_object()) {
                for (auto it = j.begin(); it != j.end(); ++it) out_ << it.key() << "\t" << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
            } else {
                out_ << j.dump(2) << "\n";
            }
            out_.flush();
        }

        // ---- commands ----
        Json cmd_init(const std::string& chain_id, const std::string& chain_seed, const std::vector<std::string>& accounts, const std::string& node);
        Json cmd_keys_add(const std::string& name, const std::string& seed);
        Json cmd_keys_list();
        Json cmd_serve(const std::string& host, int port);
        Json cmd_status();
        Json cmd_instantiate(const std::string& label, std::optional<Uscrt> mint_price, const std::vector<std::string>& minters);
        Json cmd_mint(const std::string& to, const std::string& out_path, const std::string& template_dir, std::vector<std::string> endpoints);
        Json cmd_publish(const std::string& id, const std::string& path, const std::string& access, const std::vector<std::string>& tags,
                         const std::string& entry, bool no_gzip, std::size_t ceiling, const std::vector<std::string>& meta, bool reset_on_transfer);
        Json cmd_get_package(const std::string& id, const std::string& tag, std::optional<std::uint64_t> serial, const std::string& out_path, bool raw,
                             bool authenticated);
        Json cmd_join(const std::string& match, const std::string& token, std::optional<Uscrt> wager);
        Json cmd_setup(const std::string& match, const std::string& token, const std::vector<std::string>& placements,
                       const std::string& fleet_json, const std::string& random_seed);
        Json cmd_replay(const std::string& file);

        std::ostream& out_;
        std::ostream& err_;
        Options opts_;
        std::vector<std::string> args_;
        std::string dry_run_payload_;
        std::uint64_t sessions_{0};

        std::optional<Json> config_;
        std::string config_home_;
        std::unique_ptr<node::Journal> journal_;
        std::unique_ptr<node::JournalClient> journal_client_;
        std::unique_ptr<node::HttpClient> http_;
        client::ChainClient* client_{nullptr};
    };

    // ---------------------------------------------------------------------------------

    Json Runner::cmd_keys_add(const std::string& name, const std::string& seed) {
        if (name.empty() || name.find_first_of("/\\. ") != std::string::npos) throw UserError("invalid key name '" + name + "'");
        if (fs::exists(key_path(name))) throw UserError("key '" + name + "' already exists");
        const auto key = seed.empty() ? crypto::PrivateKey::generate() : crypto::PrivateKey::from_seed(as_bytes(seed));
        const Wallet w = Wallet::from_key(key);
        write_file(key_path(name),
                   Json{{"name", name}, {"private_key", to_hex(key.bytes())}, {"public_key", w.pub.hex()}, {"address", w.address.str()}}.dump(2) + "\n",
                   true);
        return Json{{"name", name}, {"address", w.address.str()}};
    }

    Json Runner::cmd_keys_list() {
        Json keys = Json::array();
        if (fs::exists(home() / "keys")) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(home() / "keys")) files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& p : files) {
                const Json k = Json::parse(read_file(p));
                keys.push_back(Json{{"name", k.at("name")}, {"address", k.at("address")}});
            }
        }
        return Json{{"keys", keys}};
    }

    Json Runner::cmd_init(const std::string& chain_id, const std::string& chain_seed, const std::vector<std::string>& accounts, const std::string& node) {
        const fs::path state = home() / "chain.jsonl";
        if (fs::exists(state)) throw UserError(state.string() + " already exists");
        fs::create_directories(home() / "keys");

        chain::ChainConfig cfg;
        cfg.chain_id = chain_id;
        if (chain_seed.empty()) {
            crypto::os_random(cfg.seed);
        } else {
            cfg.seed = crypto::sha256(as_bytes("nfp-chain:" + chain_seed));
        }
        Json created = Json::array();
        const std::vector<std::string> specs = accounts.empty() ? std::vector<std::string>{"admin"} : accounts;
        for (const auto& spec : specs) {
            const auto eq = spec.find('=');
            const std::string name = spec.substr(0, eq);
            Uscrt balance = kDefaultGenesisBalance;
            if (eq != std::string::npos) {
                try {
                    balance = std::stoull(spec.substr(eq + 1));
                } catch (const std::logic_error&) {
                    throw UserError("bad balance in '" + spec + "'");
                }
            }
            if (!fs::exists(key_path(name))) cmd_keys_add(name, opts_.seed.empty() ? "" : opts_.seed + ":key:" + name);
            const Address addr = wallet(name).address;
            cfg.accounts.push_back({addr, balance});
            created.push_back(Json{{"name", name}, {"address", addr.str()}, {"balance", balance}});
        }
        node::Journal::create(state, cfg, contract::code_registry());

        auto& c = config();
        c["state"] = "chain.jsonl";
        c["default_key"] = specs.front().substr(0, specs.front().find('='));
        if (!node.empty()) c["node"] = node;
        save_config();
        return Json{{"home", home().string()}, {"chain_id", chain_id}, {"accounts", created}};
    }

    Json Runner::cmd_serve(const std::string& host, int port) {
        if (!node_url().empty()) throw UserError("serve runs against the local state file, not --node");
        chain();
        node::HttpServer server{journal_->chain(), *journal_client_};
        const int bound = server.bind(host, port);

        sigset_t set;
        sigemptyset(&set);
        sigaddset(&set, SIGINT);
        sigaddset(&set, SIGTERM);
        pthread_sigmask(SIG_BLOCK, &set, nullptr);  // the server thread inherits the mask
        server.start();
        out_ << Json{{"listening", "http://" + host + ":" + std::to_string(bound)}, {"chain_id", journal_->chain().chain_id()},
                     {"height", journal_->chain().height()}}
                    .dump()
             << std::endl;
        int sig = 0;
        sigwait(&set, &sig);
        server.stop();
        return Json{{"stopped", true}, {"height", journal_->chain().height()}};
    }

    Json Runner::cmd_status() {
        auto& c = chain();
        Json j{{"chain_id", c.chain_id()}, {"height", height()}, {"consensus_pubkey", to_hex(c.consensus_pubkey().bytes())}};
        if (journal_) j["last_block"] = to_hex(journal_->chain().last_block().hash);
        const std::string contract_addr = !opts_.contract.empty() ? opts_.contract : config().value("contract", std::string{});
        if (!contract_addr.empty()) j["contract"] = contract_addr;
        return j;
    }

    Json Runner::cmd_instantiate(const std::string& label, std::optional<Uscrt> mint_price, const std::vector<std::string>& minters) {
        const Wallet admin = wallet(opts_.signer);
        Json init{{"admin", admin.address.str()}};
        Json m = Json::array();
        for (const auto& who : minters.empty() ? std::vector<std::string>{admin.address.str()} : minters) m.push_back(address_of(who).str());
        init["minters"] = m;
        if (mint_price) init["mint_price"] = *mint_price;
        client::ContractCall call;
        call.kind = client::ContractCall::Kind::kInstantiate;
        call.code_id = contract::kCodeId;
        call.label = label;
        call.msg = init;
        Json j = mutate({}, {call}, &admin);
        if (!opts_.dry_run) {
            config()["contract"] = j.at("contract");
            save_config();
        }
        return j;
    }

    Json Runner::cmd_mint(const std::string& to, const std::string& out_path, const std::string& template_dir, std::vector<std::string> endpoints) {
        const Address recipient = address_of(to.empty() ? (opts_.signer.empty() ? config().value("default_key", std::string{}) : opts_.signer) : to);
        const Address c = contract();
        // Token ids are sequential; the contract refuses the mint if another landed first.
        const auto next = query({{"num_tokens", Json::object()}}, false).at("count").get<std::uint64_t>() + 1;
        const std::string id = std::to_string(next);
        const Json cfg = query({{"config", Json::object()}}, false);
        const Uscrt price = cfg.contains("mint_price") && cfg.at("mint_price").is_number() ? cfg.at("mint_price").get<Uscrt>() : 0;

        if (endpoints.empty()) {
            if (config().contains("endpoints")) {
                endpoints = config().at("endpoints").get<std::vector<std::string>>();
            } else {
                const std::string url = node_url();
                endpoints = {url.empty() ? std::string{kDefaultNode} : url};
            }
        }
        std::string dir = template_dir;
        if (dir.empty()) {
            const char* env = std::getenv("NFP_ASSETS_DIR");
            dir = env ? env : NFP_DEFAULT_ASSETS_DIR;
        }
        const auto tmpl = svg::load_reference_template(dir);
        const auto built = svg::build_svg(tmpl, {endpoints, chain().chain_id(), c, id}, svg::token_traits(id));

        Json j = execute({{"mint", {{"to", recipient.str()}, {"svg", built.document}, {"expected_token_id", id}}}}, price);
        if (opts_.dry_run) return j;
        const fs::path file = out_path.empty() ? home() / "tokens" / ("token-" + id + ".svg") : fs::path{out_path};
        write_file(file, built.document);
        j["token_id"] = id;
        j["svg"] = file.string();
        j["svg_bytes"] = built.size();
        return j;
    }

    Json Runner::cmd_publish(const std::string& id, const std::string& path, const std::string& access, const std::vector<std::string>& tags,
                             const std::string& entry, bool no_gzip, std::size_t ceiling, const std::vector<std::string>& meta,
                             bool reset_on_transfer) {
        const fs::path src{path};
        Bytes data;
        std::size_t raw_size = 0;
        std::string encoding = "gzip";
        if (fs::is_directory(src)) {
            std::map<std::string, std::string> sources;
            std::vector<svg::Asset> assets;
            std::vector<fs::path> files;
            for (const auto& e : fs::recursive_directory_iterator(src)) {
                if (e.is_regular_file()) files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                const std::string rel = fs::relative(f, src).generic_string();
                if (f.extension() == ".js" || f.extension() == ".mjs") {
                    sources[rel] = read_file(f);
                } else {
                    assets.push_back({rel, mime_for(f), to_bytes(read_file(f))});
                }
            }
            svg::BundleOptions bo;
            bo.ceiling = ceiling;
            auto bundle = svg::bundle_package(entry, sources, assets, bo);
            raw_size = bundle.raw_size();
            data = std::move(bundle.data);
        } else {
            data = to_bytes(read_file(src));
            raw_size = data.size();
            if (no_gzip) {
                encoding = "none";
            } else {
                data = codec::gzip_compress(data);
            }
            if (data.size() > ceiling) {
                throw svg::BundleError("package is " + std::to_string(data.size()) + " bytes after encoding, over the " + std::to_string(ceiling) +
                                       "-byte ceiling");
            }
        }
        Json metadata = Json::object();
        for (const auto& kv : meta) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw UserError("metadata must be KEY=VALUE, got '" + kv + "'");
            metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        Json args{{"package_id", id}, {"access", access}, {"data", to_base64(data)}, {"content_encoding", encoding}, {"tags", tags}, {"metadata", metadata}};
        if (reset_on_transfer) args["reset_on_transfer"] = true;
        Json j = execute({{"upload_package", args}});
        if (!opts_.dry_run) {
            j["raw_size"] = raw_size;
            j["stored_size"] = data.size();
        }
        return j;
    }

    Json Runner::cmd_get_package(const std::string& id, const std::string& tag, std::optional<std::uint64_t> serial, const std::string& out_path,
                                 bool raw, bool authenticated) {
        Json q{{"package_id", id}};
        if (!tag.empty()) q["tag"] = tag;
        if (serial) q["serial"] = *serial;
        Json pkg = query({{"get_package", q}}, authenticated);
        Bytes data = from_base64(pkg.at("data").get<std::string>());
        pkg.erase("data");
        if (!raw && pkg.value("content_encoding", std::string{"none"}) == "gzip") data = codec::gzip_decompress(data);
        pkg["size"] = data.size();
        pkg["sha256"] = to_hex(crypto::sha256(data));
        if (out_path == "-") {
            out_.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
            return Json();
        }
        if (!out_path.empty()) {
            write_file(out_path, to_string(data));
            pkg["written"] = out_path;
        }
        return pkg;
    }

    Json Runner::cmd_join(const std::string& match, const std::string& token, std::optional<Uscrt> wager) {
        if (!wager) {
            const Json lobby = query({{"list_open_matches", Json::object()}}, false);
            for (const auto& m : lobby.at("matches")) {
                if (m.at("match_id") == match) wager = m.at("wager").get<Uscrt>();
            }
            if (!wager) throw UserError("match " + match + " is not open; pass --wager to try anyway");
        }
        return execute({{"join_match", {{"match_id", match}, {"token_id", token}}}}, *wager);
    }

    std::vector<game::Placement> random_fleet(const std::string& seed) {
        std::mt19937_64 rng{crypto::Drbg{crypto::sha256(as_bytes("nfp-fleet:" + seed))}.next<8>()[0]};
        // Re-seed from the full digest so nearby seeds do not share streams.
        const auto d = crypto::sha256(as_bytes("nfp-fleet:" + seed));
        std::seed_seq sq(d.begin(), d.end());
        rng.seed(sq);
        std::uniform_int_distribution<int> coord{0, 9};
        std::bernoulli_distribution horiz{0.5};
        while (true) {
            std::vector<game::Placement> out;
            std::set<std::pair<int, int>> used;
            bool ok = true;
            for (const auto v : game::kVehicles) {
                bool placed = false;
                for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
                    game::Placement p{v, {coord(rng), coord(rng)}, horiz(rng) ? game::Orientation::kHorizontal : game::Orientation::kVertical};
                    if (!p.in_grid()) continue;
                    const auto cells = p.cells();
                    if (std::any_of(cells.begin(), cells.end(), [&](const game::Cell& c) { return used.contains({c.x, c.y}); })) continue;
                    for (const auto& c : cells) used.insert({c.x, c.y});
                    out.push_back(p);
                    placed = true;
                }
                ok = ok && placed;
            }
            if (ok) return out;
        }
    }

    //! "carrier:3,4,h" -> placement
    game::Placement parse_placement(const std::string& spec) {
        const auto colon = spec.find(':');
        std::vector<std::string> parts;
        if (colon != std::string::npos) {
            std::istringstream in{spec.substr(colon + 1)};
            for (std::string p; std::getline(in, p, ',');) parts.push_back(p);
        }
        if (colon == std::string::npos || parts.size() != 3 || (parts[2] != "h" && parts[2] != "v")) {
            throw UserError("placement must look like carrier:X,Y,h|v, got '" + spec + "'");
        }
        try {
            return {game::vehicle_from_name(spec.substr(0, colon)), {std::stoi(parts[0]), std::stoi(parts[1])},
                    parts[2] == "h" ? game::Orientation::kHorizontal : game::Orientation::kVertical};
        } catch (const std::logic_error&) {
            throw UserError("bad coordinates in '" + spec + "'");
        }
    }

    Json Runner::cmd_setup(const std::string& match, const std::string& token, const std::vector<std::string>& specs, const std::string& fleet_json,
                           const std::string& random_seed) {
        const int sources = int{!specs.empty()} + int{!fleet_json.empty()} + int{!random_seed.empty()};
        if (sources != 1) throw UserError("give exactly one of --placement, --fleet-json, --random-fleet");
        Json placements = Json::array();
        if (!specs.empty()) {
            for (const auto& s : specs) placements.push_back(parse_placement(s));
        } else if (!fleet_json.empty()) {
            // Inline JSON when it looks like JSON, a file path otherwise.
            const bool inline_json = fleet_json.find_first_not_of(" \t") != std::string::npos && fleet_json[fleet_json.find_first_not_of(" \t")] == '[';
            placements = Json::parse(inline_json ? fleet_json : read_file(fleet_json));
        } else {
            for (const auto& p : random_fleet(random_seed)) placements.push_back(p);
        }
        // Catch layout mistakes locally; the contract applies the same rules.
        (void)game::Board::from_placements(placements.get<std::vector<game::Placement>>());
        return execute({{"submit_setup", {{"match_id", match}, {"token_id", token}, {"placements", placements}}}});
    }

    //! Replay file: one JSON object per line. "cmd" names the subcommand, "args" holds
    //! positionals, every other key becomes --key value (true -> bare flag, arrays repeat).
    //! "save": {"var": "field"} captures a result field; "$var" in later values expands it.
    //! "expect_error": "kind" marks a line that must fail with that contract error kind.
    Json Runner::cmd_replay(const std::string& file) {
        const std::string text = read_file(file);
        const Options outer = opts_;
        std::map<std::string, std::string> vars;
        auto expand = [&](const Json& v) -> std::string {
            const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (!s.starts_with('$')) return s;
            const auto it = vars.find(s.substr(1));
            if (it == vars.end()) throw UserError("undefined variable " + s);
            return it->second;
        };

        std::istringstream in{text};
        std::size_t line_no = 0;
        std::size_t actions = 0;
        for (std::string line; std::getline(in, line);) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos || line.starts_with('#')) continue;
            const std::string where = file + ":" + std::to_string(line_no);
            if (!Json::accept(line)) throw UserError(where + ": not JSON");
            const Json action = Json::parse(line);
            if (!action.is_object() || !action.contains("cmd") || !action.at("cmd").is_string()) throw UserError(where + ": missing \"cmd\"");
            const std::string cmd = action.at("cmd");
            if (cmd == "replay" || cmd == "serve" || cmd == "init") throw UserError(where + ": '" + cmd + "' cannot appear in a replay file");

            std::vector<std::string> argv{cmd};
            try {
                for (const auto& a : action.value("args", Json::array())) argv.push_back(expand(a));
                for (auto it = action.begin(); it != action.end(); ++it) {
                    const std::string& k = it.key();
                    if (k == "cmd" || k == "args" || k == "save" || k == "expect_error") continue;
                    if (it->is_boolean()) {
                        if (it->get<bool>()) argv.push_back("--" + k);
                        continue;
                    }
                    for (const auto& v : it->is_array() ? *it : Json::array({*it})) {
                        argv.push_back("--" + k);
                        argv.push_back(expand(v));
                    }
                }
            } catch (const UserError& e) {
                throw UserError(where + ": " + e.what());
            }

            const Result r = invoke(argv, outer);
            const std::string expected = action.value("expect_error", std::string{});
            if (!expected.empty()) {
                if (r.error_kind != expected) {
                    throw UserError(where + ": expected error '" + expected + "', got " + (r.code == kOk ? std::string{"success"} : r.error));
                }
            } else if (r.code != kOk) {
                Result failed = r;
                failed.error = where + ": " + r.error;
                throw failed;
            }
            const Json& saves = action.contains("save") ? action.at("save") : Json::object();
            for (auto it = saves.begin(); it != saves.end(); ++it) {
                const std::string field = it.value();
                const Json* src = &r.value;
                if (src->contains("result") && src->at("result").is_object() && src->at("result").contains(field)) src = &src->at("result");
                if (!src->is_object() || !src->contains(field)) throw UserError(where + ": result has no field '" + field + "'");
                const Json& v = src->at(field);
                vars[it.key()] = v.is_string() ? v.get<std::string>() : v.dump();
            }
            out_ << Json{{"line", line_no}, {"cmd", cmd}, {"result", r.code == kOk ? r.value : Json{{"error", r.error_kind}}}}.dump() << "\n";
            ++actions;
        }
        return Json{{"replayed", actions}, {"height", height()}};
    }

    // ---------------------------------------------------------------------------------

    Runner::Result Runner::invoke(const std::vector<std::string>& args, const Options& defaults) {
        Result result;
        const Options saved_opts = opts_;
        const auto saved_args = args_;
        opts_ = defaults;
        dry_run_payload_.clear();

        CLI::App app{"Non-fungible program tool: run a simulated chain and drive the NFP contract.", "nfp"};
        app.require_subcommand(1);
        app.fallthrough();  // global options may follow the subcommand
        app.set_help_all_flag("--help-all", "Show help for every subcommand");
        app.add_option("--home", opts_.home, "Directory holding config, keys and chain state")->envname("NFP_HOME");
        app.add_option("--node", opts_.node, "Talk to a running node at this URL instead of the local state file")->envname("NFP_NODE");
        app.add_option("--output", opts_.output, "Result format")->check(CLI::IsMember({"json", "table"}));
        app.add_option("--seed", opts_.seed, "Derive keys and envelope randomness from this seed (reproducible runs)");
        app.add_option("--contract", opts_.contract, "Contract address (defaults to the instantiated one)");
        app.add_option("--as", opts_.signer, "Key that signs transactions and query permits (default: the configured key)");
        app.add_option("--fee", opts_.fee, "Fee in uscrt");
        app.add_option("--fee-granter", opts_.fee_granter, "Pay the fee from this account's allowance");
        app.add_flag("--dry-run", opts_.dry_run, "Print the canonical signed transaction without sending it");

        std::function<Json()> action;

        // init
        std::string chain_id = "nfp-sim-1";
        std::string chain_seed;
        std::vector<std::string> accounts;
        std::string init_node;
        auto* init = app.add_subcommand("init", "Create a home directory, keys and a genesis state file");
        init->add_option("--chain-id", chain_id);
        init->add_option("--chain-seed", chain_seed, "Seed for consensus keys and chain randomness");
        init->add_option("--account", accounts, "NAME[=BALANCE]; the first becomes the default key")->take_all();
        init->add_option("--node-url", init_node, "Record a node URL so later commands use HTTP");
        init->callback([&] { action = [&] { return cmd_init(chain_id, chain_seed, accounts, init_node); }; });

        // keys
        auto* keys = app.add_subcommand("keys", "Manage signing keys")->require_subcommand(1);
        std::string key_name;
        std::string key_seed;
        auto* keys_add = keys->add_subcommand("add", "Create a key");
        keys_add->add_option("name", key_name)->required();
        keys_add->add_option("--from-seed", key_seed, "Derive the key from this text instead of the OS");
        keys_add->callback([&] { action = [&] { return cmd_keys_add(key_name, key_seed); }; });
        keys->add_subcommand("list", "List keys")->callback([&] { action = [&] { return cmd_keys_list(); }; });

        // serve
        std::string host = "127.0.0.1";
        int port = 26657;
        auto* serve = app.add_subcommand("serve", "Serve the local chain over HTTP until interrupted");
        serve->add_option("--host", host);
        serve->add_option("--port", port)->check(CLI::Range(0, 65535));
        serve->callback([&] { action = [&] { return cmd_serve(host, port); }; });

        app.add_subcommand("status", "Chain id, height and contract")->callback([&] { action = [&] { return cmd_status(); }; });

        std::optional<std::uint64_t> block_height;
        auto* block = app.add_subcommand("block", "Show a block header, or close a block with --produce");
        bool produce = false;
        block->add_option("--height", block_height);
        block->add_flag("--produce", produce);
        block->callback([&] {
            action = [&]() -> Json {
                if (produce) return chain().produce_block();
                chain();
                if (journal_) {
                    const auto b = block_height ? journal_->chain().block(*block_height) : journal_->chain().last_block();
                    if (!b) throw UserError("no block at that height");
                    return *b;
                }
                const auto b = block_height ? http_->block(*block_height) : http_->block(http_->height());
                if (!b) throw UserError("no block at that height");
                return *b;
            };
        });

        // instantiate
        std::string label = "nfp";
        std::optional<Uscrt> mint_price;
        std::vector<std::string> minters;
        auto* inst = app.add_subcommand("instantiate", "Instantiate the NFP contract and remember its address");
        inst->add_option("--label", label);
        inst->add_option("--mint-price", mint_price);
        inst->add_option("--minter", minters, "Key name or address allowed to mint")->take_all();
        inst->callback([&] { action = [&] { return cmd_instantiate(label, mint_price, minters); }; });

        // mint
        std::string mint_to;
        std::string mint_out;
        std::string template_dir;
        std::vector<std::string> endpoints;
        auto* mint = app.add_subcommand("mint", "Mint a token and write its SVG");
        mint->add_option("--to", mint_to, "Recipient key name or address (default: the signer)");
        mint->add_option("-o,--out", mint_out, "SVG output path");
        mint->add_option("--template-dir", template_dir, "Directory with token_template.svg, bootloader.js and token_traits.json");
        mint->add_option("--endpoint", endpoints, "API endpoint embedded in the SVG; repeatable")->take_all();
        mint->callback([&] { action = [&] { return cmd_mint(mint_to, mint_out, template_dir, endpoints); }; });

        // publish
        std::string package_id;
        std::string package_path;
        std::string access = "public";
        std::vector<std::string> tags;
        std::string entry = "main.js";
        bool no_gzip = false;
        std::size_t ceiling = svg::kDefaultBundleCeiling;
        std::vector<std::string> meta;
        bool reset_on_transfer = false;
        auto* publish = app.add_subcommand("publish", "Upload a file, or bundle a directory, as a package version");
        publish->add_option("package_id", package_id)->required();
        publish->add_option("path", package_path)->required();
        publish->add_option("--access", access)->check(CLI::IsMember({"public", "owners", "cleared"}));
        publish->add_option("--tag", tags)->take_all();
        publish->add_option("--entry", entry, "Entry module when bundling a directory");
        publish->add_flag("--no-gzip", no_gzip, "Store a single file uncompressed");
        publish->add_option("--ceiling", ceiling, "Largest stored size in bytes");
        publish->add_option("--meta", meta, "KEY=VALUE metadata; repeatable")->take_all();
        publish->add_flag("--reset-on-transfer", reset_on_transfer);
        publish->callback([&] {
            action = [&] { return cmd_publish(package_id, package_path, access, tags, entry, no_gzip, ceiling, meta, reset_on_transfer); };
        });

        // get-package
        std::string get_tag;
        std::optional<std::uint64_t> get_serial;
        std::string get_out;
        bool get_raw = false;
        auto* get = app.add_subcommand("get-package", "Fetch a package version by tag, serial or latest");
        get->add_option("package_id", package_id)->required();
        bool get_auth = false;
        get->add_flag("--auth", get_auth, "Query with the signer's permit instead of anonymously");
        auto* tag_opt = get->add_option("--tag", get_tag);
        get->add_option("--serial", get_serial)->excludes(tag_opt);
        get->add_option("-o,--out", get_out, "Write the content here ('-' for stdout)");
        get->add_flag("--raw", get_raw, "Keep the stored encoding instead of decompressing");
        get->callback([&] { action = [&] { return cmd_get_package(package_id, get_tag, get_serial, get_out, get_raw, get_auth); }; });

        // game
        std::string match_id;
        std::string token_id;
        std::optional<Uscrt> wager;
        auto* new_match = app.add_subcommand("new-match", "Open a match with a token, escrowing the wager");
        new_match->add_option("--token", token_id)->required();
        new_match->add_option("--wager", wager);
        new_match->callback([&] {
            action = [&] {
                const Uscrt w = wager.value_or(0);
                return execute({{"new_match", {{"token_id", token_id}, {"wager", w}}}}, w);
            };
        });

        auto* join = app.add_subcommand("join", "Join an open match, matching its wager");
        join->add_option("--match", match_id)->required();
        join->add_option("--token", token_id)->required();
        join->add_option("--wager", wager, "Override the wager read from the lobby");
        join->callback([&] { action = [&] { return cmd_join(match_id, token_id, wager); }; });

        std::vector<std::string> placements;
        std::string fleet_json;
        std::string random_seed;
        auto* setup = app.add_subcommand("setup", "Submit a fleet layout");
        setup->add_option("--match", match_id)->required();
        setup->add_option("--token", token_id)->required();
        setup->add_option("--placement", placements, "VEHICLE:X,Y,h|v; one per vehicle")->take_all();
        setup->add_option("--fleet-json", fleet_json, "Placements as JSON text or a file");
        setup->add_option("--random-fleet", random_seed, "Random valid layout derived from this seed");
        setup->callback([&] { action = [&] { return cmd_setup(match_id, token_id, placements, fleet_json, random_seed); }; });

        int ax = -1;
        int ay = -1;
        auto* attack = app.add_subcommand("attack", "Fire at a cell of the opponent's grid");
        attack->add_option("--match", match_id)->required();
        attack->add_option("--token", token_id)->required();
        attack->add_option("--x", ax)->required();
        attack->add_option("--y", ay)->required();
        attack->callback([&] {
            action = [&] { return execute({{"attack", {{"match_id", match_id}, {"token_id", token_id}, {"x", ax}, {"y", ay}}}}); };
        });

        auto* state = app.add_subcommand("state", "Show a match from one player's side");
        state->add_option("--match", match_id)->required();
        state->add_option("--token", token_id)->required();
        state->callback([&] { action = [&] { return query({{"match_state", {{"match_id", match_id}, {"token_id", token_id}}}}, true); }; });

        app.add_subcommand("lobby", "List open matches")->callback([&] {
            action = [&] { return query({{"list_open_matches", Json::object()}}, false); };
        });

        // tokens and accounts
        std::string recipient;
        auto* transfer = app.add_subcommand("transfer", "Transfer a token");
        transfer->add_option("--token", token_id)->required();
        transfer->add_option("--to", recipient)->required();
        transfer->callback([&] {
            action = [&] { return execute({{"transfer", {{"token_id", token_id}, {"recipient", address_of(recipient).str()}}}}); };
        });

        auto* tokens = app.add_subcommand("tokens", "List tokens owned by the signer");
        tokens->callback([&] {
            action = [&] { return query({{"tokens_of", Json::object()}}, true); };
        });

        std::string account_of;
        auto* account = app.add_subcommand("account", "Balance and sequence of an account");
        account->add_option("--of", account_of, "Key name or address (default: the signer)");
        account->callback([&] {
            action = [&] {
                const auto a = chain().account(account_of.empty() ? wallet(opts_.signer).address : address_of(account_of));
                return Json{{"address", a.address.str()}, {"balance", a.balance}, {"sequence", a.sequence}};
            };
        });

        Uscrt amount = 0;
        auto* send = app.add_subcommand("send", "Send uscrt");
        send->add_option("--to", recipient)->required();
        send->add_option("--amount", amount)->required();
        send->callback([&] { action = [&] { return mutate({chain::msg::bank_send(address_of(recipient), amount)}, {}); }; });

        std::optional<std::uint64_t> expires;
        auto* grant = app.add_subcommand("grant-fee", "Let another account spend up to LIMIT of the signer's balance on fees");
        grant->add_option("--to", recipient)->required();
        grant->add_option("--limit", amount)->required();
        grant->add_option("--expires", expires, "Last block height the allowance can be used");
        grant->callback([&] {
            action = [&] { return mutate({chain::msg::grant_fee_allowance(address_of(recipient), amount, expires)}, {}); };
        });

        std::vector<std::string> methods;
        auto* delegate = app.add_subcommand("delegate", "Allow another account to call game methods for the signer's tokens");
        delegate->add_option("--to", recipient)->required();
        delegate->add_option("--method", methods, "Delegable method; repeatable")->required()->take_all();
        delegate->add_option("--token", token_id, "Limit the grant to one token");
        delegate->callback([&] {
            action = [&] {
                Json args{{"delegate", address_of(recipient).str()}, {"methods", methods}};
                if (!token_id.empty()) args["token_id"] = token_id;
                return execute({{"approve_delegate", args}});
            };
        });

        std::string replay_file;
        auto* replay = app.add_subcommand("replay", "Run the actions in a JSON-lines file in order");
        replay->add_option("file", replay_file)->required();
        replay->callback([&] { action = [&] { return cmd_replay(replay_file); }; });

        auto finish = [&] {
            opts_ = saved_opts;
            args_ = saved_args;
        };
        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
            if (opts_.home.empty()) opts_.home = ".nfp";
            args_ = args;
            if (config_ && config_home_ != opts_.home) {
                config_.reset();
            }
            result.value = action();
            if (opts_.dry_run) result.raw = dry_run_payload_;
        } catch (const CLI::CallForHelp&) {
            result.raw = app.help();
        } catch (const CLI::CallForAllHelp&) {
            result.raw = app.help("", CLI::AppFormatMode::All);
        } catch (const CLI::ParseError& e) {
            result.code = kUserError;
            result.error = e.what();
            if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
                result.error += "\n" + sub->help();
            }
        } catch (const Result& nested) {
            result = nested;
        } catch (const chain::ContractError& e) {
            result.code = kContractError;
            result.error_kind = e.kind();
            result.error = e.kind() + ": " + e.what();
        } catch (const client::TxRejected& e) {
            result.code = kContractError;
            result.error_kind = e.code();
            result.error = e.what();
        } catch (const crypto::TransportError& e) {
            result.code = kTransportError;
            result.error = e.what();
        } catch (const node::HttpError& e) {
            result.code = kTransportError;
            result.error = e.what();
        } catch (const node::JournalError& e) {
            result.code = kTransportError;
            result.error = e.what();
        } catch (const std::exception& e) {
            // UserError, malformed input, bundle and SVG failures.
            result.code = kUserError;
            result.error = e.what();
        }
        finish();
        return result;
    }

    int Runner::dispatch(const std::vector<std::string>& args, const Options& defaults) {
        const Result r = invoke(args, defaults);
        if (r.code != kOk) {
            err_ << "error: " << r.error << "\n";
            err_.flush();
            return r.code;
        }
        if (!r.raw.empty()) {
            out_ << r.raw << (r.raw.ends_with('\n') ? "" : "\n");
        } else {
            std::string output = "json";
            for (std::size_t i = 0; i + 1 < args.size(); ++i) {
                if (args[i] == "--output") output = args[i + 1];
            }
            emit(r.value, output);
        }
        out_.flush();
        return kOk;
    }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        Runner runner{out, err};
        return runner.dispatch(args, Options{});
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUserError;
    }
}

}  // namespace nfp::cli
