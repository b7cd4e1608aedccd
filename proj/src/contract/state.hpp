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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nfp/contract/nfp_contract.hpp>

namespace nfp::contract::detail {

using chain::ContractContext;
using chain::ContractError;
using chain::Uscrt;

//! Who is asking, as far as a query can tell: the verified permit signer, or nobody.
struct Viewer {
    std::optional<Address> address;
    std::set<std::string> permissions;

    [[nodiscard]] bool has(const char* p) const { return address && permissions.contains(p); }
};

//! Typed access to the contract's storage layout. Every method is metered through ctx.
class State {
  public:
    explicit State(ContractContext& ctx) : ctx_{ctx} {}

    [[nodiscard]] ContractContext& ctx() { return ctx_; }

    Json config();
    bool is_admin(const Address& a);

    std::optional<Json> token(const std::string& token_id);
    //! Throws unauthorized for unknown ids, so existence never leaks.
    Address owner_of(const std::string& token_id);
    std::vector<std::string> tokens_of(const Address& owner);
    void set_tokens_of(const Address& owner, const std::vector<std::string>& ids);

    //! Sender may run `method` on the token: owner, or a delegate granted that method
    //! in token or owner scope. Returns the current owner.
    Address authorize(const std::string& token_id, std::string_view method);
    //! Sender must be the owner itself.
    Address authorize_owner(const std::string& token_id);
    //! Read access for queries: owner, or any delegate holding a grant in scope.
    bool can_view(const std::string& token_id, const Address& who);
    //! Tokens `who` owns or acts for as a delegate.
    std::set<std::string> accessible_tokens(const Address& who);

    std::optional<std::vector<std::string>> token_grant(const std::string& token_id, const Address& delegate);
    std::optional<std::vector<std::string>> owner_grant(const Address& owner, const Address& delegate);
    void revoke_token_grants(const std::string& token_id);

    std::uint64_t push_notification(const std::string& token_id, const Json& payload);

    //! Appends a version to a contract-owned package bound to `token_id`.
    std::uint64_t publish_token_package(const std::string& token_id, const std::string& name, ByteView data,
                                        const std::vector<std::string>& tags);
    void reset_cleared_on_transfer(const std::string& token_id);

  private:
    ContractContext& ctx_;
};

//! Parses a viewer out of a permit, throwing unauthorized on any defect.
Viewer authenticate(ContractContext& ctx, const Json& permit_json);

Json execute_package(State& s, const std::string& method, const Json& args);
Json query_package(State& s, const Viewer& viewer, const std::string& method, const Json& args);

Json execute_game(State& s, const std::string& method, const Json& args);
Json query_game(State& s, const Viewer& viewer, const std::string& method, const Json& args);

[[nodiscard]] std::string str_field(const Json& args, const char* key);

}  // namespace nfp::contract::detail
