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

#include <array>
#include <string_view>

#include <nfp/chain/chain.hpp>
#include <nfp/contract/permit.hpp>

namespace nfp::contract {

inline constexpr const char* kCodeId = "nfp";

//! Methods an owner may hand to a delegate. Everything else (transfer, approvals,
//! permit revocation) stays with the owner.
inline constexpr std::array<std::string_view, 5> kDelegableMethods{"new_match", "join_match", "submit_setup", "attack", "kv_put"};

[[nodiscard]] bool is_delegable(std::string_view method);

inline constexpr std::size_t kMaxPackageIdBytes = 128;
inline constexpr std::size_t kMaxKvKeyBytes = 256;
inline constexpr std::size_t kMaxKvValueBytes = 64 * 1024;
inline constexpr std::size_t kMaxNotificationsPerFetch = 100;
//! Prefix reserved for packages the contract publishes itself.
inline constexpr std::string_view kTokenPackagePrefix = "token/";

//! The NFP contract: tokens, ownership index, permits, delegation, notifications,
//! key-value storage, the package manager and the game.
class NfpContract final : public chain::Contract {
  public:
    Json instantiate(chain::ContractContext& ctx, const Json& msg) override;
    Json execute(chain::ContractContext& ctx, const Json& msg) override;
    Json query(chain::ContractContext& ctx, const Json& msg) override;
};

[[nodiscard]] chain::CodeRegistry code_registry();

}  // namespace nfp::contract
