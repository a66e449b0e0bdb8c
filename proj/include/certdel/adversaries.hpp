#pragma once

#include <string>
#include <vector>

#include "certdel/games.hpp"

namespace certdel::games {

struct StrategyInfo {
    std::string name;
    std::string summary;
    std::vector<GameId> games;

    bool supports(GameId id) const {
        for (auto g : games)
            if (g == id) return true;
        return false;
    }
};

// Named strategy catalog. Every entry runs in each of its listed games
// within the configured oracle budget.
const std::vector<StrategyInfo>& builtin_adversaries();

const StrategyInfo* find_adversary(const std::string& name);

// Factories return nothing when the strategy does not play that game.
KeyDistinguisherFactory make_key_distinguisher(const std::string& name, const ikem::Params& params);
DemDistinguisherFactory make_dem_distinguisher(const std::string& name, const dem::Params& params);
HybridDistinguisherFactory make_hybrid_distinguisher(const std::string& name,
                                                     const phecd::Params& params);
// `base` describes the scheme whose key is released: dem.key_len is the
// released key length and key slicing follows the multi-bit layout.
DeletionAdversaryFactory make_deletion_adversary(const std::string& name,
                                                 const demcd::Params& base);

}  // namespace certdel::games
