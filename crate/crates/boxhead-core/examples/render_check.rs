use boxhead_core::factors::{sample_factors, VariantSpec};
use boxhead_core::renderer::{render, SceneConfig, IMAGE_SIZE};

fn main() {
    let cfg = SceneConfig::default();
    let spec = VariantSpec::new(1).unwrap();
    for (k, seed) in [3u64, 17, 40].iter().enumerate() {
        let f = sample_factors(&spec, *seed);
        let img = render(&f, &cfg).unwrap();
        image::save_buffer(
            format!("/tmp/sample{k}.png"),
            &img.pixels,
            IMAGE_SIZE as u32,
            IMAGE_SIZE as u32,
            image::ColorType::Rgb8,
        )
        .unwrap();
        println!("{k}: az={:+.3} scale={:.3} cube={:.2} macro={:.2} micro={:?}",
            f.azimuth, f.scale, f.cube_hue, f.macro_hue,
            f.micro_hue.map(|m| (m * 100.0).round() / 100.0));
    }
}
