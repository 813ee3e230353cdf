/*******************************************************************************
 * Copyright 2026 SVRender Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#include "sv/pipeline.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "sv/clip.hpp"
#include "sv/error.hpp"

namespace sv {

Vec3 shade_fragment(const Vec3& posEye, const Vec3& normalEye,
                    const Material& material, const LightSource& lightEye) {
  const Vec3 n = normalize(normalEye);
  Vec3 l;
  if (lightEye.position.w > 0.0)
    l = lightEye.position.xyz() * (1.0 / lightEye.position.w) - posEye;
  else
    l = lightEye.position.xyz();
  l = normalize(l);
  const double ndotl = dot(n, l);
  if (ndotl <= 0.0) return {0.0, 0.0, 0.0};
  Vec3 c{material.diffuse.x * lightEye.color.x * ndotl,
         material.diffuse.y * lightEye.color.y * ndotl,
         material.diffuse.z * lightEye.color.z * ndotl};
  if (material.hasSpecular) {
    const Vec3 v = normalize(posEye * -1.0);  // eye sits at the origin
    const Vec3 h = normalize(l + v);
    const double ndoth = dot(n, h);
    if (ndoth > 0.0) {
      const double s = std::pow(ndoth, material.specularExponent);
      c.x += material.specular.x * lightEye.color.x * s;
      c.y += material.specular.y * lightEye.color.y * s;
      c.z += material.specular.z * lightEye.color.z * s;
    }
  }
  return c;
}

namespace {

StencilFaceState volume_face_ops(LoopFormulation f, bool frontFace,
                                 bool wrapOps) {
  const StencilOp incr = wrapOps ? StencilOp::IncrWrap : StencilOp::Incr;
  const StencilOp decr = wrapOps ? StencilOp::DecrWrap : StencilOp::Decr;
  StencilFaceState s;  // Always-pass, full masks, Keep everywhere
  if (f == LoopFormulation::ZFail) {
    // Depth-fail counting: fragments of the volume boundary hidden behind
    // scene geometry count; back faces add, front faces cancel.
    s.opDepthFail = frontFace ? decr : incr;
  } else {
    // Depth-pass counting: boundary fragments in front of the scene count;
    // front faces add, back faces cancel.
    s.opDepthPass = frontFace ? incr : decr;
  }
  return s;
}

}  // namespace

VolumeSubmission shadow_volume_pass(
    Framebuffer& fb, const ShadowVolumeGeometry& volume,
    const HMat4& clipFromWorld, const PipelineModes& modes,
    const std::function<LoopFormulation(int)>& loopFormulation,
    RasterStats& stats) {
  RenderState base;
  base.depthTest = true;
  base.depthFunc = DepthFunc::Less;
  base.depthWrite = false;
  base.colorWrite = false;
  base.stencilTest = true;
  base.depthClamp = modes.depthClamp;

  const auto drawTris = [&](const std::vector<VolumeTri>& tris,
                            const RenderState& st) {
    for (const VolumeTri& t : tris) {
      ClipVertex cv[3];
      for (int j = 0; j < 3; ++j)
        cv[j].position = transform(clipFromWorld, t.v[j]);
      draw_clip_triangle(fb, st, cv[0], cv[1], cv[2], 0, nullptr, &stats);
    }
  };

  const auto submit = [&](const std::vector<VolumeTri>& tris,
                          LoopFormulation f) {
    if (tris.empty()) return;
    if (modes.twoSided) {
      RenderState st = base;
      st.twoSided = true;
      st.cull = CullMode::None;
      st.stencilFront = volume_face_ops(f, /*frontFace=*/true, modes.wrapOps);
      st.stencilBack = volume_face_ops(f, /*frontFace=*/false, modes.wrapOps);
      drawTris(tris, st);
      return;
    }
    // Two-pass emulation; the incrementing facing goes first so saturating
    // ops clamp as late as possible.
    RenderState first = base, second = base;
    if (f == LoopFormulation::ZFail) {
      first.cull = CullMode::Front;  // draw back faces
      first.stencilFront = volume_face_ops(f, /*frontFace=*/false, modes.wrapOps);
      second.cull = CullMode::Back;  // draw front faces
      second.stencilFront = volume_face_ops(f, /*frontFace=*/true, modes.wrapOps);
    } else {
      first.cull = CullMode::Back;
      first.stencilFront = volume_face_ops(f, /*frontFace=*/true, modes.wrapOps);
      second.cull = CullMode::Front;
      second.stencilFront = volume_face_ops(f, /*frontFace=*/false, modes.wrapOps);
    }
    drawTris(tris, first);
    drawTris(tris, second);
  };

  bool anyZFail = false;
  for (int i = 0; i < static_cast<int>(volume.sideLoops.size()); ++i) {
    const LoopFormulation f = loopFormulation(i);
    if (f == LoopFormulation::ZFail) anyZFail = true;
    submit(side_triangles(volume.sideLoops[i], volume.encoding), f);
  }

  bool capsRendered = false;
  switch (modes.formulation) {
    case FormulationMode::ZFail: capsRendered = true; break;
    case FormulationMode::ZPass: capsRendered = false; break;
    case FormulationMode::PerLoopMixed:
      capsRendered = anyZFail || volume.sideLoops.empty();
      break;
  }
  if (capsRendered) {
    std::vector<VolumeTri> caps = volume.backCap;
    caps.insert(caps.end(), volume.frontCap.begin(), volume.frontCap.end());
    submit(caps, LoopFormulation::ZFail);
  }

  VolumeSubmission out;
  const std::uint64_t passes = modes.twoSided ? 1 : 2;
  out.sideVertices = volume.side_vertices_submitted() * passes;
  out.capsRendered = capsRendered;
  if (capsRendered) out.capVertices = volume.cap_vertices_submitted() * passes;
  return out;
}

namespace {

// Per-mesh geometry prepared once per frame: clip-space positions, affine
// eye-space positions, and a flat eye-space normal per triangle.
struct MeshFrameData {
  std::vector<HVec4> clipPos;
  std::vector<Vec3> eyePos;
  std::vector<Vec3> triNormal;
};

MeshFrameData prepare_mesh(const TriMesh& mesh, const HMat4& view,
                           const HMat4& clipFromWorld) {
  MeshFrameData d;
  d.clipPos.reserve(mesh.vertices.size());
  d.eyePos.reserve(mesh.vertices.size());
  for (const HVec4& v : mesh.vertices) {
    d.clipPos.push_back(transform(clipFromWorld, v));
    const HVec4 e = transform(view, v);
    d.eyePos.push_back(e.w != 0.0 ? e.xyz() * (1.0 / e.w) : e.xyz());
  }
  d.triNormal.reserve(mesh.triangles.size());
  for (const std::array<int, 3>& t : mesh.triangles) {
    const Vec3& p0 = d.eyePos[static_cast<std::size_t>(t[0])];
    const Vec3& p1 = d.eyePos[static_cast<std::size_t>(t[1])];
    const Vec3& p2 = d.eyePos[static_cast<std::size_t>(t[2])];
    d.triNormal.push_back(cross(p1 - p0, p2 - p0));
  }
  return d;
}

// Draws every triangle of a scene mesh with position+normal varyings.
void draw_mesh(Framebuffer& fb, const RenderState& state, const TriMesh& mesh,
               const MeshFrameData& d, const FragmentShader* shader,
               RasterStats* stats) {
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const std::array<int, 3>& tri = mesh.triangles[t];
    const Vec3& n = d.triNormal[t];
    ClipVertex cv[3];
    for (int j = 0; j < 3; ++j) {
      const std::size_t vi = static_cast<std::size_t>(tri[static_cast<std::size_t>(j)]);
      cv[j].position = d.clipPos[vi];
      const Vec3& p = d.eyePos[vi];
      cv[j].varying[0] = p.x;
      cv[j].varying[1] = p.y;
      cv[j].varying[2] = p.z;
      cv[j].varying[3] = n.x;
      cv[j].varying[4] = n.y;
      cv[j].varying[5] = n.z;
    }
    draw_clip_triangle(fb, state, cv[0], cv[1], cv[2], 6, shader, stats);
  }
}

}  // namespace

FrameResult render_frame(const Scene& scene, const PipelineModes& modes) {
  if (modes.width <= 0 || modes.height <= 0)
    throw ParamError("render size must be positive");
  if (modes.stencilBits < 1 || modes.stencilBits > 32)
    throw ParamError("stencil bits must lie in [1, 32]");
  if (modes.twoSided && !modes.wrapOps)
    throw ParamError("two-sided stencil requires wrapping stencil ops");
  if (modes.formulation == FormulationMode::PerLoopMixed && !modes.loopPolicy)
    throw ParamError("mixed formulation requires a per-loop policy");
  if (modes.projection == ProjectionMode::Finite &&
      scene.camera.frustum.infiniteFar())
    throw ParamError("finite projection requires a finite far plane");
  validate_scene(scene);

  const HMat4 view =
      look_at(scene.camera.eye, scene.camera.lookAt, scene.camera.up);
  const HMat4 proj = modes.projection == ProjectionMode::Finite
                         ? perspective_finite(scene.camera.frustum)
                         : perspective_infinite(scene.camera.frustum);
  const HMat4 clipFromWorld = proj * view;

  FrameResult result(modes.width, modes.height, modes.stencilBits);
  Framebuffer& fb = result.framebuffer;
  fb.clear_color(0.0f, 0.0f, 0.0f);
  fb.clear_depth(1.0f);
  fb.clear_stencil(0);
  result.visible.reset(modes.width, modes.height);

  std::vector<MeshFrameData> frameData;
  frameData.reserve(scene.meshes.size());
  for (const SceneMesh& sm : scene.meshes)
    frameData.push_back(prepare_mesh(sm.mesh, view, clipFromWorld));

  // Pass 1: depth prepass + ambient color; records the eye-space surface
  // point and normal of the final visible fragment of every pixel.
  {
    RenderState amb;
    amb.depthTest = true;
    amb.depthFunc = DepthFunc::Less;
    amb.depthWrite = true;
    amb.colorWrite = true;
    amb.cull = CullMode::Back;
    amb.blend = BlendMode::Replace;
    for (std::size_t i = 0; i < scene.meshes.size(); ++i) {
      const Material& mat = scene.meshes[i].material;
      const FragmentShader shader = [&](const Fragment& f) {
        const std::size_t px = result.visible.index(f.x, f.y);
        result.visible.covered[px] = 1;
        result.visible.position[px] = {f.varyings[0], f.varyings[1],
                                       f.varyings[2]};
        result.visible.normal[px] = {f.varyings[3], f.varyings[4],
                                     f.varyings[5]};
        return std::array<float, 3>{
            static_cast<float>(scene.ambient.x * mat.diffuse.x),
            static_cast<float>(scene.ambient.y * mat.diffuse.y),
            static_cast<float>(scene.ambient.z * mat.diffuse.z)};
      };
      draw_mesh(fb, amb, scene.meshes[i].mesh, frameData[i], &shader, nullptr);
    }
  }

  // Shadow casters: adjacency and world-space planes are light-independent.
  struct Caster {
    std::size_t meshIndex;
    Adjacency adj;
    std::vector<Plane> planes;
  };
  std::vector<Caster> casters;
  for (std::size_t i = 0; i < scene.meshes.size(); ++i) {
    if (!scene.meshes[i].castsShadow) continue;
    casters.push_back(Caster{i, build_adjacency(scene.meshes[i].mesh),
                             triangle_planes(scene.meshes[i].mesh)});
  }

  RasterStats volumeStats;
  for (const LightSource& light : scene.lights) {
    fb.clear_stencil(0);

    // Pass 2: stencil shadow volumes for this light.
    for (const Caster& c : casters) {
      const TriMesh& mesh = scene.meshes[c.meshIndex].mesh;
      const FacingSet facing =
          classify_facing(mesh, c.planes, light.position);
      VolumeOptions vopts;
      vopts.encoding = modes.encoding;
      vopts.dropDirectionalBackCap =
          modes.dropDirectionalBackCap && light.position.w == 0.0;
      const ShadowVolumeGeometry vol =
          build_shadow_volume(mesh, c.adj, facing, light.position, vopts);
      ++result.stats.volumeCount;
      result.stats.loopCount += vol.sideLoops.size();
      const auto loopForm = [&](int loopIdx) {
        if (modes.formulation == FormulationMode::ZFail)
          return LoopFormulation::ZFail;
        if (modes.formulation == FormulationMode::ZPass)
          return LoopFormulation::ZPass;
        return modes.loopPolicy(static_cast<int>(c.meshIndex), loopIdx);
      };
      const VolumeSubmission sub = shadow_volume_pass(
          fb, vol, clipFromWorld, modes, loopForm, volumeStats);
      result.stats.volumeVerticesSubmitted += sub.sideVertices;
      result.stats.capVerticesSubmitted += sub.capVertices;
    }

    if (modes.recordPerLightStencil) {
      const std::span<const std::uint32_t> s = fb.stencil_data();
      result.perLightStencil.emplace_back(s.begin(), s.end());
    }

    // Pass 3: additive lighting where the stencil stayed zero.
    RenderState ls;
    ls.depthTest = true;
    ls.depthFunc = DepthFunc::Equal;
    ls.depthWrite = false;
    ls.colorWrite = true;
    ls.cull = CullMode::Back;
    ls.blend = BlendMode::Add;
    ls.stencilTest = true;
    ls.stencilFront.func = StencilFunc::Equal;
    ls.stencilFront.ref = 0;
    ls.stencilFront.opStencilFail = StencilOp::Keep;
    ls.stencilFront.opDepthFail = StencilOp::Keep;
    ls.stencilFront.opDepthPass =
        modes.doubleBlendGuard == DoubleBlendGuard::Incr ? StencilOp::Incr
                                                         : StencilOp::Keep;
    const LightSource lightEye{transform(view, light.position), light.color};
    for (std::size_t i = 0; i < scene.meshes.size(); ++i) {
      const Material& mat = scene.meshes[i].material;
      const FragmentShader shader = [&](const Fragment& f) {
        const Vec3 c = shade_fragment(
            {f.varyings[0], f.varyings[1], f.varyings[2]},
            {f.varyings[3], f.varyings[4], f.varyings[5]}, mat, lightEye);
        return std::array<float, 3>{static_cast<float>(c.x),
                                    static_cast<float>(c.y),
                                    static_cast<float>(c.z)};
      };
      draw_mesh(fb, ls, scene.meshes[i].mesh, frameData[i], &shader, nullptr);
    }
  }

  result.stats.shadowFragments = volumeStats.fragments;
  result.stats.stencilWrites = volumeStats.stencilWrites;
  result.stats.saturations = volumeStats.saturations;
  return result;
}

}  // namespace sv
