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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <nfp/crypto/address.hpp>

namespace nfp::chain {

using Json = nlohmann::json;
using Uscrt = std::uint64_t;
using Gas = std::uint64_t;

struct GasParams {
    Gas block_gas_limit{6'000'000};
    Gas write_cost_per_byte{18};
    Gas write_cost_flat{2'000};
    Gas read_cost_per_byte{1};
    Gas read_cost_flat{1'000};
    Gas base_tx_cost{50'000};
    Gas query_gas_limit{3'000'000};
};

struct GenesisAccount {
    Address address;
    Uscrt balance{0};
};

struct ChainConfig {
    std::string chain_id{"nfp-sim-1"};
    GasParams gas;
    std::vector<GenesisAccount> accounts;
    //! Seeds every key and nonce the chain generates; hex-encoded in JSON.
    Hash256 seed{};
};

struct Account {
    Address address;
    Uscrt balance{0};
    std::uint64_t sequence{0};
};

struct FeeGrant {
    Address granter;
    Address grantee;
    Uscrt spend_limit{0};  // remaining allowance
    std::optional<std::uint64_t> expiration;  // last usable block height

    [[nodiscard]] bool expired_at(std::uint64_t height) const { return expiration && height > *expiration; }
};

struct BlockHeader {
    std::uint64_t height{0};
    Hash256 hash{};
    Hash256 prev_hash{};
    std::vector<Hash256> tx_hashes;
    Gas gas_used{0};
};

void to_json(Json& j, const GasParams& p);
void from_json(const Json& j, GasParams& p);
void to_json(Json& j, const ChainConfig& c);
void from_json(const Json& j, ChainConfig& c);
void to_json(Json& j, const BlockHeader& b);
void from_json(const Json& j, BlockHeader& b);

//! Canonical JSON text: sorted keys, no insignificant whitespace, UTF-8.
[[nodiscard]] std::string canonical(const Json& j);

[[nodiscard]] Address address_field(const Json& j, const char* key);

}  // namespace nfp::chain
