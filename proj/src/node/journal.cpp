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

#include <nfp/node/journal.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nfp::node {

namespace {

    using chain::Json;

    int lock_file(const std::filesystem::path& path, int flags) {
        const int fd = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
        if (fd < 0) {
            if (errno == EEXIST) throw JournalError(path.string() + " already exists");
            throw JournalError("cannot open " + path.string() + ": " + std::strerror(errno));
        }
        if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd);
            throw LockError(path.string() + " is locked by another process");
        }
        return fd;
    }

    void write_all(int fd, const std::string& data) {
        std::size_t off = 0;
        while (off < data.size()) {
            const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw JournalError(std::string{"journal write failed: "} + std::strerror(errno));
            }
            off += static_cast<std::size_t>(n);
        }
    }

    std::string read_all(int fd) {
        std::string out;
        char buf[1 << 16];
        ::lseek(fd, 0, SEEK_SET);
        while (true) {
            const ssize_t n = ::read(fd, buf, sizeof buf);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw JournalError(std::string{"journal read failed: "} + std::strerror(errno));
            }
            if (n == 0) break;
            out.append(buf, static_cast<std::size_t>(n));
        }
        return out;
    }

    Json tx_entry(const chain::SignedTx& tx, const chain::TxResult& r) {
        return {{"kind", "tx"}, {"tx", tx.to_json()}, {"code", r.code}, {"hash", to_hex(r.tx_hash)}};
    }

    Json block_entry(const chain::BlockHeader& b) { return {{"kind", "block"}, {"height", b.height}, {"hash", to_hex(b.hash)}}; }

}  // namespace

Journal::Journal(std::filesystem::path path, int fd, chain::Chain chain) : path_{std::move(path)}, fd_{fd}, chain_{std::move(chain)} {}

Journal::~Journal() { ::close(fd_); }

std::unique_ptr<Journal> Journal::create(const std::filesystem::path& path, const chain::ChainConfig& config, chain::CodeRegistry codes) {
    const int fd = lock_file(path, O_RDWR | O_CREAT | O_EXCL);
    std::unique_ptr<Journal> j{new Journal(path, fd, chain::Chain{config, std::move(codes)})};
    j->append({{"kind", "genesis"}, {"config", config}});
    return j;
}

std::unique_ptr<Journal> Journal::open(const std::filesystem::path& path, chain::CodeRegistry codes) {
    const int fd = lock_file(path, O_RDWR);
    std::string text;
    try {
        text = read_all(fd);
    } catch (...) {
        ::close(fd);
        throw;
    }

    std::vector<Json> entries;
    std::istringstream in{text};
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.empty()) continue;
        try {
            entries.push_back(Json::parse(line));
        } catch (const Json::parse_error&) {
            // A torn final write is dropped; anything earlier is corruption.
            if (in.eof() && !text.ends_with('\n')) break;
            ::close(fd);
            throw JournalError(path.string() + ":" + std::to_string(line_no) + ": unparsable entry");
        }
    }
    auto fail = [&](const std::string& why) {
        ::close(fd);
        return JournalError(path.string() + ": " + why);
    };
    if (entries.empty() || entries.front().value("kind", "") != "genesis") throw fail("missing genesis entry");

    std::size_t start = 1;
    for (std::size_t i = entries.size(); i-- > 1;) {
        if (entries[i].value("kind", "") == "snapshot") {
            start = i;
            break;
        }
    }
    try {
        chain::Chain chain = start > 1 ? chain::Chain::restore(entries[start].at("state"), codes)
                                       : chain::Chain{entries.front().at("config").get<chain::ChainConfig>(), codes};
        if (start > 1) ++start;
        std::size_t since_snapshot = 0;
        for (std::size_t i = start; i < entries.size(); ++i) {
            const Json& e = entries[i];
            const std::string kind = e.at("kind");
            if (kind == "tx") {
                const auto r = chain.broadcast_execute(chain::SignedTx::from_json(e.at("tx")));
                if (r.code != e.at("code") || to_hex(r.tx_hash) != e.at("hash")) throw fail("replay diverged at entry " + std::to_string(i + 1));
            } else if (kind == "block") {
                const auto b = chain.produce_block();
                if (b.height != e.at("height") || to_hex(b.hash) != e.at("hash")) throw fail("block hash diverged at entry " + std::to_string(i + 1));
            } else if (kind != "snapshot") {
                throw fail("unknown entry kind '" + kind + "'");
            }
            ++since_snapshot;
        }
        std::unique_ptr<Journal> j{new Journal(path, fd, std::move(chain))};
        j->since_snapshot_ = since_snapshot;
        if (!text.empty() && !text.ends_with('\n')) {
            // Drop the torn tail so the next append starts on a fresh line.
            if (::ftruncate(fd, static_cast<off_t>(text.rfind('\n') + 1)) != 0) throw JournalError("cannot truncate torn journal tail");
        }
        return j;
    } catch (const JournalError&) {
        throw;
    } catch (const std::exception& e) {
        throw fail(std::string{"corrupt entry: "} + e.what());
    }
}

void Journal::append(const Json& entry) {
    ::lseek(fd_, 0, SEEK_END);
    write_all(fd_, entry.dump() + "\n");
    ::fsync(fd_);
}

chain::TxResult Journal::broadcast(const chain::SignedTx& tx) {
    std::lock_guard lock{write_mutex_};
    auto r = chain_.broadcast_execute(tx);
    append(tx_entry(tx, r));
    ++since_snapshot_;
    return r;
}

chain::BlockHeader Journal::produce_block() {
    std::lock_guard lock{write_mutex_};
    auto b = chain_.produce_block();
    append(block_entry(b));
    if (++since_snapshot_ >= snapshot_interval_) {
        append({{"kind", "snapshot"}, {"state", chain_.snapshot()}});
        since_snapshot_ = 0;
    }
    return b;
}

chain::TxResult JournalClient::broadcast(const chain::SignedTx& tx) {
    auto r = journal_.broadcast(tx);
    if (!r.rejected()) journal_.produce_block();
    return r;
}

}  // namespace nfp::node
