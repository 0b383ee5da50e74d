/**
 * Orbit camera and the small amount of 4x4 matrix math it needs.
 *
 * The world is z-up (heights along +z). The camera orbits a target point
 * at a distance; grabbing translates the target in the view plane. All of
 * this is local: moving the camera never sends a wire message.
 */

export interface Camera {
  theta: number; // azimuth, radians
  phi: number; // elevation, radians
  distance: number;
  target: [number, number, number];
}

export function defaultCamera(): Camera {
  return { theta: Math.PI / 4, phi: 0.5, distance: 22, target: [0, 0, 0] };
}

const PHI_LIMIT = Math.PI / 2 - 0.01;

export function orbit(camera: Camera, dTheta: number, dPhi: number): Camera {
  const phi = Math.min(PHI_LIMIT, Math.max(-PHI_LIMIT, camera.phi + dPhi));
  return { ...camera, theta: camera.theta + dTheta, phi };
}

export function dolly(camera: Camera, factor: number): Camera {
  const distance = Math.min(500, Math.max(0.5, camera.distance * factor));
  return { ...camera, distance };
}

export function eyePosition(camera: Camera): [number, number, number] {
  const c = Math.cos(camera.phi);
  return [
    camera.target[0] + camera.distance * c * Math.cos(camera.theta),
    camera.target[1] + camera.distance * c * Math.sin(camera.theta),
    camera.target[2] + camera.distance * Math.sin(camera.phi),
  ];
}

/** Translate the target in the current view plane (screen-aligned grab). */
export function grab(camera: Camera, dxPixels: number, dyPixels: number, pixelScale: number): Camera {
  const right = [ -Math.sin(camera.theta), Math.cos(camera.theta), 0 ];
  const upish = [
    -Math.sin(camera.phi) * Math.cos(camera.theta),
    -Math.sin(camera.phi) * Math.sin(camera.theta),
    Math.cos(camera.phi),
  ];
  const s = pixelScale * camera.distance;
  const target: [number, number, number] = [
    camera.target[0] - dxPixels * s * right[0] + dyPixels * s * upish[0],
    camera.target[1] - dxPixels * s * right[1] + dyPixels * s * upish[1],
    camera.target[2] - dxPixels * s * right[2] + dyPixels * s * upish[2],
  ];
  return { ...camera, target };
}

// --- matrices (column-major, WebGL layout) ---------------------------------

export type Mat4 = Float32Array;

export function perspective(fovyRad: number, aspect: number, near: number, far: number): Mat4 {
  const f = 1 / Math.tan(fovyRad / 2);
  const out = new Float32Array(16);
  out[0] = f / aspect;
  out[5] = f;
  out[10] = (far + near) / (near - far);
  out[11] = -1;
  out[14] = (2 * far * near) / (near - far);
  return out;
}

export function lookAt(eye: number[], target: number[], up: number[]): Mat4 {
  const zx = eye[0] - target[0];
  const zy = eye[1] - target[1];
  const zz = eye[2] - target[2];
  let zl = Math.hypot(zx, zy, zz) || 1;
  const z = [zx / zl, zy / zl, zz / zl];
  const x = [
    up[1] * z[2] - up[2] * z[1],
    up[2] * z[0] - up[0] * z[2],
    up[0] * z[1] - up[1] * z[0],
  ];
  const xl = Math.hypot(x[0], x[1], x[2]) || 1;
  x[0] /= xl; x[1] /= xl; x[2] /= xl;
  const y = [
    z[1] * x[2] - z[2] * x[1],
    z[2] * x[0] - z[0] * x[2],
    z[0] * x[1] - z[1] * x[0],
  ];
  const out = new Float32Array(16);
  out[0] = x[0]; out[4] = x[1]; out[8] = x[2];
  out[1] = y[0]; out[5] = y[1]; out[9] = y[2];
  out[2] = z[0]; out[6] = z[1]; out[10] = z[2];
  out[12] = -(x[0] * eye[0] + x[1] * eye[1] + x[2] * eye[2]);
  out[13] = -(y[0] * eye[0] + y[1] * eye[1] + y[2] * eye[2]);
  out[14] = -(z[0] * eye[0] + z[1] * eye[1] + z[2] * eye[2]);
  out[15] = 1;
  return out;
}

export function multiply(a: Mat4, b: Mat4): Mat4 {
  const out = new Float32Array(16);
  for (let col = 0; col < 4; col++) {
    for (let row = 0; row < 4; row++) {
      let sum = 0;
      for (let k = 0; k < 4; k++) {
        sum += a[k * 4 + row] * b[col * 4 + k];
      }
      out[col * 4 + row] = sum;
    }
  }
  return out;
}

export function viewProjection(camera: Camera, aspect: number): Mat4 {
  const projection = perspective(Math.PI / 4, aspect, 0.1, 2000);
  const view = lookAt(eyePosition(camera), camera.target as unknown as number[], [0, 0, 1]);
  return multiply(projection, view);
}

/** World point -> normalized device coords; w <= 0 means behind the camera. */
export function project(vp: Mat4, p: [number, number, number]): { x: number; y: number; visible: boolean } {
  const x = vp[0] * p[0] + vp[4] * p[1] + vp[8] * p[2] + vp[12];
  const y = vp[1] * p[0] + vp[5] * p[1] + vp[9] * p[2] + vp[13];
  const w = vp[3] * p[0] + vp[7] * p[1] + vp[11] * p[2] + vp[15];
  if (w <= 0) {
    return { x: 0, y: 0, visible: false };
  }
  return { x: x / w, y: y / w, visible: true };
}
