//! Regenerates the meshes in `data/` from the built-in shape generators.
//!
//! cargo run -p fieldtopo --example bundled_meshes

use std::path::Path;

use fieldtopo::mesh::io::{write_obj, write_off};
use fieldtopo::shapes;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("tetrahedron.obj"), write_obj(&shapes::tetrahedron()))?;
    let offs = [
        ("icosphere.off", shapes::icosphere(3)),
        ("torus.off", shapes::torus(24, 12, 2.0, 0.7)),
        ("double_torus.off", shapes::double_torus(2)),
        ("disk.off", shapes::hex_disk(4)),
        ("curved_disk.off", shapes::curved_disk(4)),
        ("annulus.off", shapes::annulus(8, 2)),
        ("pants.off", shapes::pair_of_pants(10, 6)),
        ("punctured_torus.off", shapes::punctured_torus(12, 8)),
    ];
    for (name, mesh) in offs {
        std::fs::write(dir.join(name), write_off(&mesh, mesh.num_vertices()))?;
    }
    Ok(())
}
