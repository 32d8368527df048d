// Copyright 2026 The dronesim Authors
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

#pragma once

#include "dronesim/base64.hpp"
#include "dronesim/camera.hpp"
#include "dronesim/datagen.hpp"
#include "dronesim/dataset.hpp"
#include "dronesim/drone.hpp"
#include "dronesim/errors.hpp"
#include "dronesim/geometry.hpp"
#include "dronesim/harness.hpp"
#include "dronesim/image_io.hpp"
#include "dronesim/metrics.hpp"
#include "dronesim/motion.hpp"
#include "dronesim/parallel.hpp"
#include "dronesim/planner.hpp"
#include "dronesim/policy.hpp"
#include "dronesim/regression.hpp"
#include "dronesim/render.hpp"
#include "dronesim/rng.hpp"
#include "dronesim/scenario.hpp"
#include "dronesim/scene.hpp"
#include "dronesim/scene_json.hpp"
#include "dronesim/wire.hpp"
