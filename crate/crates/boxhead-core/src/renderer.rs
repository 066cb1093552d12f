//! Software rasterizer for the box scene.
//!
//! A scene is a wall/floor background split at a fixed horizon row plus a
//! cube rotated about the vertical axis, drawn with a perspective camera.
//! The front face carries a centered inscribed square split into 2x2
//! quadrants painted with the four micro hues. Projection runs in f64, is
//! snapped to 1/16-pixel fixed point, and scan conversion is integer-only,
//! so output bytes are identical across platforms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::FactorVector;

/// Output image side length in pixels.
pub const IMAGE_SIZE: usize = 64;
/// Bytes per image (RGB8).
pub const IMAGE_BYTES: usize = IMAGE_SIZE * IMAGE_SIZE * 3;

/// Subpixel units per pixel for the fixed-point snap.
const SUBPIXEL: i64 = 16;

/// A row-major RGB8 image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl Image {
    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Self {
        let mut pixels = Vec::with_capacity(width * height * 3);
        for _ in 0..width * height {
            pixels.extend_from_slice(&rgb);
        }
        Image { width, height, pixels }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        let i = (y * self.width + x) * 3;
        self.pixels[i..i + 3].copy_from_slice(&rgb);
    }
}

/// Camera, geometry and surface constants. None of these are dictated by the
/// generative factors; they are serialized with every dataset manifest so a
/// manifest alone reproduces its samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneConfig {
    pub camera_position: [f64; 3],
    pub camera_target: [f64; 3],
    /// Vertical field of view in radians.
    pub fov_y: f64,
    /// Cube edge length before the scale factor is applied.
    pub cube_edge: f64,
    /// Side of the inscribed square as a fraction of the front-face width.
    pub inset_fraction: f64,
    /// Horizon height as a fraction of the image height.
    pub horizon_fraction: f64,
    /// Per-face value multipliers for flat shading.
    pub front_value_mul: f64,
    pub side_value_mul: f64,
    pub top_value_mul: f64,
    /// (saturation, value) per surface kind.
    pub wall_sv: (f64, f64),
    pub floor_sv: (f64, f64),
    pub cube_sv: (f64, f64),
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            camera_position: [0.0, 1.05, 2.45],
            camera_target: [0.0, 0.0, 0.0],
            fov_y: 0.82,
            cube_edge: 1.0,
            inset_fraction: 0.6,
            horizon_fraction: 0.62,
            front_value_mul: 1.0,
            side_value_mul: 0.8,
            top_value_mul: 0.9,
            wall_sv: (0.6, 0.7),
            floor_sv: (0.6, 0.6),
            cube_sv: (0.9, 0.85),
        }
    }
}

impl SceneConfig {
    fn validate(&self) -> Result<()> {
        if self.camera_position == self.camera_target {
            return Err(Error::Config(
                "degenerate camera: position equals target".into(),
            ));
        }
        if !(self.inset_fraction > 0.0 && self.inset_fraction < 1.0) {
            return Err(Error::Config(format!(
                "inset_fraction {} outside (0, 1)",
                self.inset_fraction
            )));
        }
        for (name, m) in [
            ("front_value_mul", self.front_value_mul),
            ("side_value_mul", self.side_value_mul),
            ("top_value_mul", self.top_value_mul),
        ] {
            if !(m > 0.0 && m <= 1.0) {
                return Err(Error::Config(format!("{name} {m} outside (0, 1]")));
            }
        }
        Ok(())
    }

    pub fn horizon_row(&self) -> usize {
        ((self.horizon_fraction * IMAGE_SIZE as f64).round() as usize).min(IMAGE_SIZE)
    }
}

/// Hexcone HSV to RGB8, round-to-nearest per channel.
pub fn hue_to_rgb(h: f64, s: f64, v: f64) -> Result<[u8; 3]> {
    if !(0.0..1.0).contains(&h) || !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&v) {
        return Err(Error::Contract(format!(
            "hue_to_rgb: arguments out of range: h={h} s={s} v={v}"
        )));
    }
    let hsix = h * 6.0;
    let sector = (hsix as usize).min(5);
    let f = hsix - sector as f64;
    let p = v * (1.0 - s);
    let q = v * (1.0 - f * s);
    let t = v * (1.0 - (1.0 - f) * s);
    let (r, g, b) = match sector {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    let ch = |x: f64| (x * 255.0).round() as u8;
    Ok([ch(r), ch(g), ch(b)])
}

/// Cube faces that can appear under the allowed azimuth range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    Top,
    LeftSide,
    RightSide,
    Front,
}

/// Back-to-front draw order of the visible faces.
///
/// The camera sits above the cube center on the +z axis looking down-forward,
/// so the top and front faces are always visible. Rotating the cube by a
/// positive azimuth (counterclockwise seen from above) turns the -x face
/// toward the camera, exposing the viewer's left side.
pub fn visible_faces(azimuth: f64) -> Result<Vec<Face>> {
    let limit = std::f64::consts::FRAC_PI_6 + 1e-12;
    if !azimuth.is_finite() || azimuth.abs() > limit {
        return Err(Error::Contract(format!(
            "visible_faces: azimuth {azimuth} outside [-pi/6, pi/6]"
        )));
    }
    let mut order = vec![Face::Top];
    if azimuth > 0.0 {
        order.push(Face::LeftSide);
    } else if azimuth < 0.0 {
        order.push(Face::RightSide);
    }
    order.push(Face::Front);
    Ok(order)
}

#[derive(Clone, Copy)]
struct Mat3 {
    rows: [[f64; 3]; 3],
}

impl Mat3 {
    fn mul(&self, v: [f64; 3]) -> [f64; 3] {
        let r = &self.rows;
        [
            r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2],
            r[1][0] * v[0] + r[1][1] * v[1] + r[1][2] * v[2],
            r[2][0] * v[0] + r[2][1] * v[1] + r[2][2] * v[2],
        ]
    }
}

struct Projector {
    view: Mat3,
    position: [f64; 3],
    /// Screen scale: pixels per unit of (view x / depth).
    scale: f64,
}

impl Projector {
    fn new(cfg: &SceneConfig) -> Result<Self> {
        let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        let norm = |v: [f64; 3]| {
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        };
        let cross = |a: [f64; 3], b: [f64; 3]| {
            [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        };
        let fwd = norm(sub(cfg.camera_target, cfg.camera_position));
        let up = [0.0, 1.0, 0.0];
        let right = cross(fwd, up);
        let rn = (right[0] * right[0] + right[1] * right[1] + right[2] * right[2]).sqrt();
        if rn < 1e-9 {
            return Err(Error::Config("camera looks straight along the up axis".into()));
        }
        let right = [right[0] / rn, right[1] / rn, right[2] / rn];
        let true_up = cross(right, fwd);
        let view = Mat3 {
            rows: [right, true_up, fwd],
        };
        let scale = (IMAGE_SIZE as f64 / 2.0) / (cfg.fov_y / 2.0).tan();
        Ok(Projector {
            view,
            position: cfg.camera_position,
            scale,
        })
    }

    /// World point to subpixel screen coordinates (1/16 px fixed point).
    fn project(&self, p: [f64; 3]) -> Result<[i64; 2]> {
        let rel = [
            p[0] - self.position[0],
            p[1] - self.position[1],
            p[2] - self.position[2],
        ];
        let v = self.view.mul(rel);
        let depth = v[2];
        if depth <= 1e-9 {
            return Err(Error::Config(
                "scene geometry behind the camera; check camera configuration".into(),
            ));
        }
        let half = IMAGE_SIZE as f64 / 2.0;
        let px = half + self.scale * v[0] / depth;
        let py = half - self.scale * v[1] / depth;
        Ok([
            (px * SUBPIXEL as f64).round() as i64,
            (py * SUBPIXEL as f64).round() as i64,
        ])
    }
}

/// Fill a convex quad given by snapped corners. A pixel is owned if its
/// center lies inside or on every edge of the (consistently oriented) quad;
/// painter's order resolves shared edges deterministically.
fn fill_quad(img: &mut Image, corners: [[i64; 2]; 4], rgb: [u8; 3]) {
    // Orient counterclockwise in screen space (y down) via the shoelace sum.
    let mut pts = corners;
    let mut area2 = 0i64;
    for i in 0..4 {
        let [x0, y0] = pts[i];
        let [x1, y1] = pts[(i + 1) % 4];
        area2 += x0 * y1 - x1 * y0;
    }
    if area2 == 0 {
        return; // degenerate (edge-on face)
    }
    if area2 < 0 {
        pts.reverse();
    }
    let min_x = pts.iter().map(|p| p[0]).min().unwrap();
    let max_x = pts.iter().map(|p| p[0]).max().unwrap();
    let min_y = pts.iter().map(|p| p[1]).min().unwrap();
    let max_y = pts.iter().map(|p| p[1]).max().unwrap();
    let px_lo = (min_x.div_euclid(SUBPIXEL)).max(0) as usize;
    let px_hi = (max_x.div_euclid(SUBPIXEL) + 1).clamp(0, img.width as i64 - 1) as usize;
    let py_lo = (min_y.div_euclid(SUBPIXEL)).max(0) as usize;
    let py_hi = (max_y.div_euclid(SUBPIXEL) + 1).clamp(0, img.height as i64 - 1) as usize;
    for y in py_lo..=py_hi {
        let cy = y as i64 * SUBPIXEL + SUBPIXEL / 2;
        for x in px_lo..=px_hi {
            let cx = x as i64 * SUBPIXEL + SUBPIXEL / 2;
            let mut inside = true;
            for i in 0..4 {
                let [x0, y0] = pts[i];
                let [x1, y1] = pts[(i + 1) % 4];
                let cross = (x1 - x0) * (cy - y0) - (y1 - y0) * (cx - x0);
                if cross < 0 {
                    inside = false;
                    break;
                }
            }
            if inside {
                img.set(x, y, rgb);
            }
        }
    }
}

/// Object-space corner of the scaled cube; `u`, `v`, `w` in {-1, +1} select
/// the corner along x, y, z.
fn cube_corner(half: f64, u: f64, v: f64, w: f64) -> [f64; 3] {
    [half * u, half * v, half * w]
}

fn rotate_y(p: [f64; 3], azimuth: f64) -> [f64; 3] {
    let (s, c) = azimuth.sin_cos();
    [p[0] * c + p[2] * s, p[1], -p[0] * s + p[2] * c]
}

/// Rasterize one scene. Bit-deterministic given (factors, config).
pub fn render(f: &FactorVector, cfg: &SceneConfig) -> Result<Image> {
    cfg.validate()?;
    let proj = Projector::new(cfg)?;

    // Background: wall above the horizon row, floor below.
    let wall = hue_to_rgb(f.wall_hue, cfg.wall_sv.0, cfg.wall_sv.1)?;
    let floor = hue_to_rgb(f.floor_hue, cfg.floor_sv.0, cfg.floor_sv.1)?;
    let horizon = cfg.horizon_row();
    let mut img = Image::filled(IMAGE_SIZE, IMAGE_SIZE, wall);
    for y in horizon..IMAGE_SIZE {
        for x in 0..IMAGE_SIZE {
            img.set(x, y, floor);
        }
    }

    // Cube geometry.
    let half = cfg.cube_edge * f.scale / 2.0;
    let az = f.azimuth;
    let project_quad = |obj: [[f64; 3]; 4]| -> Result<[[i64; 2]; 4]> {
        let mut out = [[0i64; 2]; 4];
        for (i, p) in obj.iter().enumerate() {
            out[i] = proj.project(rotate_y(*p, az))?;
        }
        Ok(out)
    };

    let (s, v) = cfg.cube_sv;
    let face_quad = |face: Face| -> [[f64; 3]; 4] {
        match face {
            Face::Top => [
                cube_corner(half, -1.0, 1.0, -1.0),
                cube_corner(half, 1.0, 1.0, -1.0),
                cube_corner(half, 1.0, 1.0, 1.0),
                cube_corner(half, -1.0, 1.0, 1.0),
            ],
            Face::LeftSide => [
                cube_corner(half, -1.0, -1.0, -1.0),
                cube_corner(half, -1.0, -1.0, 1.0),
                cube_corner(half, -1.0, 1.0, 1.0),
                cube_corner(half, -1.0, 1.0, -1.0),
            ],
            Face::RightSide => [
                cube_corner(half, 1.0, -1.0, -1.0),
                cube_corner(half, 1.0, -1.0, 1.0),
                cube_corner(half, 1.0, 1.0, 1.0),
                cube_corner(half, 1.0, 1.0, -1.0),
            ],
            Face::Front => [
                cube_corner(half, -1.0, -1.0, 1.0),
                cube_corner(half, 1.0, -1.0, 1.0),
                cube_corner(half, 1.0, 1.0, 1.0),
                cube_corner(half, -1.0, 1.0, 1.0),
            ],
        }
    };

    for face in visible_faces(az)? {
        let mul = match face {
            Face::Top => cfg.top_value_mul,
            Face::Front => cfg.front_value_mul,
            Face::LeftSide | Face::RightSide => cfg.side_value_mul,
        };
        let rgb = hue_to_rgb(f.cube_hue, s, v * mul)?;
        fill_quad(&mut img, project_quad(face_quad(face))?, rgb);
    }

    // Inscribed 2x2 micro-hue square on the front face (z = +half plane).
    // Quadrant order: top-left, top-right, bottom-left, bottom-right as seen
    // by the viewer (+x right, +y up).
    let q = cfg.inset_fraction * half;
    let quadrants: [[[f64; 2]; 2]; 4] = [
        [[-q, 0.0], [0.0, q]],
        [[0.0, q], [0.0, q]],
        [[-q, 0.0], [-q, 0.0]],
        [[0.0, q], [-q, 0.0]],
    ];
    for (k, [[x0, x1], [y0, y1]]) in quadrants.iter().enumerate() {
        let rgb = hue_to_rgb(f.micro_hue[k], s, v * cfg.front_value_mul)?;
        let quad = [
            [*x0, *y0, half],
            [*x1, *y0, half],
            [*x1, *y1, half],
            [*x0, *y1, half],
        ];
        fill_quad(&mut img, project_quad(quad)?, rgb);
    }

    Ok(img)
}

/// Pixel count covered by the cube (everything that differs from the
/// wall/floor background). Test and diagnostics helper.
pub fn cube_pixel_area(f: &FactorVector, cfg: &SceneConfig) -> Result<usize> {
    let with_cube = render(f, cfg)?;
    let wall = hue_to_rgb(f.wall_hue, cfg.wall_sv.0, cfg.wall_sv.1)?;
    let floor = hue_to_rgb(f.floor_hue, cfg.floor_sv.0, cfg.floor_sv.1)?;
    let horizon = cfg.horizon_row();
    let mut area = 0;
    for y in 0..IMAGE_SIZE {
        let bg = if y < horizon { wall } else { floor };
        for x in 0..IMAGE_SIZE {
            if with_cube.get(x, y) != bg {
                area += 1;
            }
        }
    }
    Ok(area)
}
