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
#include <string>
#include <string_view>

#include <nfp/chain/types.hpp>

namespace nfp::chain {

class OutOfGas : public Error {
  public:
    OutOfGas() : Error("out of gas") {}
};

//! Error raised by contract logic. `kind` is machine-readable and travels inside the
//! encrypted response; callers branch on it.
class ContractError : public Error {
  public:
    ContractError(std::string kind, const std::string& message) : Error(message), kind_{std::move(kind)} {}
    [[nodiscard]] const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

[[nodiscard]] inline ContractError unauthorized() { return {"unauthorized", "unauthorized"}; }
[[nodiscard]] inline ContractError not_found(const std::string& what) { return {"not_found", what + " not found"}; }
[[nodiscard]] inline ContractError invalid(const std::string& what) { return {"invalid", what}; }

class GasMeter {
  public:
    explicit GasMeter(Gas limit) : limit_{limit} {}

    void consume(Gas amount) {
        if (amount > limit_ - used_) {
            used_ = limit_;
            throw OutOfGas{};
        }
        used_ += amount;
    }

    [[nodiscard]] Gas used() const { return used_; }
    [[nodiscard]] Gas limit() const { return limit_; }

  private:
    Gas limit_;
    Gas used_{0};
};

struct Env {
    std::string chain_id;
    std::uint64_t height{0};
    Hash256 block_hash{};  // hash of the last produced block
    Hash256 tx_hash{};
    Address contract;
    std::optional<Address> sender;  // empty for queries
    Uscrt funds{0};
};

//! Chain services a contract can reach; implemented by the transaction overlay.
class ContractBackend {
  public:
    virtual ~ContractBackend() = default;
    virtual std::optional<Bytes> storage_get(const Address& contract, std::string_view key) = 0;
    virtual void storage_set(const Address& contract, std::string_view key, ByteView value) = 0;
    virtual void storage_remove(const Address& contract, std::string_view key) = 0;
    virtual Uscrt balance_of(const Address& who) = 0;
    virtual void transfer(const Address& from, const Address& to, Uscrt amount) = 0;
};

//! Handle given to contract code for one message: metered storage, bank access, entropy.
class ContractContext {
  public:
    ContractContext(Env env, ContractBackend& backend, GasMeter& gas, const GasParams& params, const Hash256& seed, bool read_only)
        : env_{std::move(env)}, backend_{backend}, gas_{gas}, params_{params}, seed_{seed}, read_only_{read_only} {}

    [[nodiscard]] const Env& env() const { return env_; }
    [[nodiscard]] bool read_only() const { return read_only_; }
    [[nodiscard]] GasMeter& gas() { return gas_; }

    //! Sender of an execution; throws for queries.
    [[nodiscard]] const Address& sender() const;

    std::optional<Bytes> get(std::string_view key);
    void set(std::string_view key, ByteView value);
    void remove(std::string_view key);

    std::optional<Json> get_json(std::string_view key);
    void set_json(std::string_view key, const Json& value);

    //! Pays out of the contract's own balance.
    void send(const Address& to, Uscrt amount);
    [[nodiscard]] Uscrt balance();

    //! Per-contract secret known only to contract code.
    [[nodiscard]] const Hash256& seed() const { return seed_; }

    //! SHA256(block hash || tx hash || seed).
    [[nodiscard]] Hash256 entropy() const;

  private:
    void require_writable() const;

    Env env_;
    ContractBackend& backend_;
    GasMeter& gas_;
    const GasParams& params_;
    const Hash256& seed_;
    bool read_only_;
};

//! Contract code. Implementations hold no state of their own: everything lives in
//! storage so the chain can roll a failed transaction back.
class Contract {
  public:
    virtual ~Contract() = default;
    virtual Json instantiate(ContractContext& ctx, const Json& msg) = 0;
    virtual Json execute(ContractContext& ctx, const Json& msg) = 0;
    virtual Json query(ContractContext& ctx, const Json& msg) = 0;
};

}  // namespace nfp::chain
