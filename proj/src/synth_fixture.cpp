// Copyright 2026 The Veriscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "veriscope/corpus.hpp"

namespace veriscope {

// Base captions are four-token scenes holding exactly one lexicon key.
// Replacements are eight tokens long and pool sentences 18 to 20, so a
// perturbed caption scores roughly 0.41 to 0.45 against its reference.
const SynthFixture& DefaultSynthFixture() {
  static const SynthFixture fixture{
      {
          "A man surfs waves.",
          "A girl rides bicycles.",
          "A dog chases frisbees.",
          "Two boys play soccer.",
          "A woman paints walls.",
          "A chef slices onions.",
          "Three kids build sandcastles.",
          "A mechanic repairs engines.",
          "A violinist performs outdoors.",
          "Two athletes lift barbells.",
          "A baker kneads dough.",
          "A skier descends slopes.",
      },
      {
          {"man", "purple giraffe wearing sunglasses while juggling flaming torches"},
          {"girl", "robotic octopus steering an invisible hovercraft through fog"},
          {"dog", "silver dragon breathing glitter across frozen volcanic islands"},
          {"boys", "astronauts floating weightlessly beside glowing crystal pyramids today"},
          {"woman", "marching band of penguins carrying golden umbrellas upward"},
          {"chef", "wizard summoning thunderstorms above ancient desert ruins tonight"},
          {"kids", "enormous mechanical spiders weaving neon cables underwater slowly"},
          {"mechanic", "ghostly pirate captain steering submarines through lava rivers"},
          {"violinist", "hovering spaceship projecting holograms onto melting glaciers nearby"},
          {"athletes", "unicorns galloping across rainbow bridges during meteor showers"},
          {"baker", "medieval knight riding zebras past floating castle towers"},
          {"skier", "tiny elephants dancing ballet atop spinning porcelain teacups"},
      },
      {
          "Meanwhile seventeen flamingos recite poetry inside an abandoned "
          "lighthouse while distant thunder echoes over purple marshes at "
          "midnight.",
          "Suddenly giant mushrooms sprout everywhere as orchestras of crickets "
          "perform symphonies beneath shimmering auroras across northern "
          "tundra plains tonight.",
          "Nearby robots negotiate peace treaties with talking volcanoes while "
          "hundreds of golden butterflies carry tiny lanterns toward silent "
          "mountains.",
          "Later ancient statues awaken slowly and begin teaching mathematics "
          "to curious whales swimming through clouds made from cotton candy.",
          "Overhead twelve hot air balloons shaped like teapots drift past "
          "crystal towers while saxophones play jazz inside hollow moons.",
          "Behind them invisible horses gallop along glass highways carrying "
          "sleepy owls who dream about frozen oceans filled with glowing "
          "jellyfish.",
      },
  };
  return fixture;
}

}  // namespace veriscope
