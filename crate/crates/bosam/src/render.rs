//! Sorted-adjacency-matrix rasterization and binary PBM encoding.
//!
//! A render maps 1-based sorted node positions onto an `R × R` pixel grid:
//! pixel `x` covers positions `[⌊x·N'/R⌋ + 1, ⌊(x+1)·N'/R⌋]`, where
//! `N' = ⌈N / zoom_scale⌉` is the zoomed-in prefix of the ordering. A pixel
//! is black iff some link joins two covered positions. Instead of scanning
//! pixel blocks, rasterization walks each link once and marks the unique
//! pixel `⌊(i·R − 1) / N'⌋` covering each endpoint position `i`, plus the
//! mirrored pixel, which is the same relation computed inversely in `O(M)`.

use crate::graph::Graph;
use crate::ordering::NodeOrdering;
use std::error::Error;
use std::fmt;

/// Fixed-size monochrome raster. Rows are packed most-significant-bit first
/// with zero padding up to a byte boundary, set bits are black — exactly the
/// binary PBM raster layout, so encoding is a header plus the raw bytes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitmap {
    width: u32,
    height: u32,
    stride: usize,
    bytes: Vec<u8>,
}

/// A render request that cannot produce a bitmap.
#[derive(Debug, PartialEq)]
pub enum RenderError {
    /// The graph has no nodes: there is no matrix to draw.
    EmptyGraph,
    InvalidResolution { given: u32 },
    InvalidZoom { given: u32 },
    /// The ordering was built for a different node count.
    OrderingMismatch { graph_nodes: usize, ordering_nodes: usize },
    InvalidFraction { given: f64 },
    /// Border density is defined over square bitmaps only.
    NotSquare { width: u32, height: u32 },
    /// Every pixel is white, so a black-pixel ratio is undefined.
    NoLinksRendered,
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::EmptyGraph => write!(f, "empty graph"),
            RenderError::InvalidResolution { given } => {
                write!(f, "resolution must be at least 1 (got {given})")
            }
            RenderError::InvalidZoom { given } => {
                write!(f, "zoom scale must be at least 1 (got {given})")
            }
            RenderError::OrderingMismatch { graph_nodes, ordering_nodes } => {
                write!(f, "ordering covers {ordering_nodes} nodes, graph has {graph_nodes}")
            }
            RenderError::InvalidFraction { given } => {
                write!(f, "border fraction must be in (0, 1] (got {given})")
            }
            RenderError::NotSquare { width, height } => {
                write!(f, "border density needs a square bitmap (got {width}x{height})")
            }
            RenderError::NoLinksRendered => write!(f, "no links rendered"),
        }
    }
}

impl Error for RenderError {}

/// Binary PBM bytes could not be decoded.
#[derive(Debug, PartialEq, Eq)]
pub enum PbmError {
    BadMagic,
    BadHeader,
    ZeroDimension,
    DataLength { expected: usize, found: usize },
}

impl fmt::Display for PbmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbmError::BadMagic => write!(f, "not a binary PBM (missing P4 magic)"),
            PbmError::BadHeader => write!(f, "malformed PBM header"),
            PbmError::ZeroDimension => write!(f, "PBM dimensions must be positive"),
            PbmError::DataLength { expected, found } => {
                write!(f, "PBM raster holds {found} bytes, header implies {expected}")
            }
        }
    }
}

impl Error for PbmError {}

impl Bitmap {
    /// All-white bitmap. Panics on zero dimensions.
    pub fn new_white(width: u32, height: u32) -> Bitmap {
        assert!(width > 0 && height > 0, "bitmap dimensions must be positive");
        let stride = (width as usize + 7) / 8;
        Bitmap { width, height, stride, bytes: vec![0u8; stride * height as usize] }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// True iff pixel `(x, y)` is black. Panics out of range.
    pub fn get(&self, x: u32, y: u32) -> bool {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of range");
        let byte = self.bytes[y as usize * self.stride + (x / 8) as usize];
        byte & (0x80 >> (x % 8)) != 0
    }

    /// Paint pixel `(x, y)` black. Panics out of range.
    pub fn set_black(&mut self, x: u32, y: u32) {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of range");
        self.bytes[y as usize * self.stride + (x / 8) as usize] |= 0x80 >> (x % 8);
    }

    /// Total black pixels. Padding bits are always zero, so a plain popcount
    /// over the raster is exact.
    pub fn count_black(&self) -> u64 {
        self.bytes.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Raw packed raster, row-major, `(width + 7) / 8` bytes per row.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

/// Render the sorted adjacency matrix of `graph` under `ordering` onto an
/// `resolution × resolution` bitmap.
///
/// `zoom_scale = 1` draws the whole matrix; larger scales keep only the
/// leading `⌈N / zoom_scale⌉` sorted positions (the highest-degree corner)
/// at the same output resolution. Links with either endpoint outside that
/// prefix are skipped. The result is always symmetric, and at
/// `resolution = ⌈N / zoom_scale⌉` each position owns exactly one pixel, so
/// the bitmap is the adjacency matrix itself (diagonal white: no
/// self-loops exist to draw).
pub fn rasterize(
    graph: &Graph,
    ordering: &NodeOrdering,
    resolution: u32,
    zoom_scale: u32,
) -> Result<Bitmap, RenderError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(RenderError::EmptyGraph);
    }
    if resolution < 1 {
        return Err(RenderError::InvalidResolution { given: resolution });
    }
    if zoom_scale < 1 {
        return Err(RenderError::InvalidZoom { given: zoom_scale });
    }
    if ordering.len() != n {
        return Err(RenderError::OrderingMismatch {
            graph_nodes: n,
            ordering_nodes: ordering.len(),
        });
    }

    let n_prime = (n as u64).div_ceil(zoom_scale as u64);
    let r = resolution as u64;
    // pixel_of[i] for 1-based position i; index 0 unused.
    let mut pixel_of = vec![0u32; n_prime as usize + 1];
    for (i, slot) in pixel_of.iter_mut().enumerate().skip(1) {
        *slot = ((i as u64 * r - 1) / n_prime) as u32;
    }

    let mut bitmap = Bitmap::new_white(resolution, resolution);
    for u in 0..n as u32 {
        let pu = ordering.position_of(u) as u64;
        if pu > n_prime {
            continue;
        }
        let x = pixel_of[pu as usize];
        for &v in graph.neighbors(u) {
            if v <= u {
                continue;
            }
            let pv = ordering.position_of(v) as u64;
            if pv > n_prime {
                continue;
            }
            let y = pixel_of[pv as usize];
            bitmap.set_black(x, y);
            bitmap.set_black(y, x);
        }
    }
    Ok(bitmap)
}

/// Encode as binary PBM: the exact header `P4\n<width> <height>\n` followed
/// by the packed raster.
pub fn encode_pbm(bitmap: &Bitmap) -> Vec<u8> {
    let header = format!("P4\n{} {}\n", bitmap.width, bitmap.height);
    let mut out = Vec::with_capacity(header.len() + bitmap.bytes.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&bitmap.bytes);
    out
}

/// Decode binary PBM bytes. Accepts any whitespace between header tokens
/// (with exactly one whitespace byte before the raster, per the format) and
/// requires the raster length to match the header exactly.
pub fn decode_pbm(data: &[u8]) -> Result<Bitmap, PbmError> {
    if data.len() < 2 || &data[..2] != b"P4" {
        return Err(PbmError::BadMagic);
    }
    let mut pos = 2usize;
    let read_number = |pos: &mut usize| -> Result<u64, PbmError> {
        while data.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
            *pos += 1;
        }
        let start = *pos;
        while data.get(*pos).is_some_and(|b| b.is_ascii_digit()) {
            *pos += 1;
        }
        if *pos == start || *pos - start > 9 {
            return Err(PbmError::BadHeader);
        }
        let mut value = 0u64;
        for &b in &data[start..*pos] {
            value = value * 10 + (b - b'0') as u64;
        }
        Ok(value)
    };
    let width = read_number(&mut pos)?;
    let height = read_number(&mut pos)?;
    if width == 0 || height == 0 {
        return Err(PbmError::ZeroDimension);
    }
    match data.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(PbmError::BadHeader),
    }
    let stride = (width as usize + 7) / 8;
    let expected = stride * height as usize;
    let raster = &data[pos..];
    if raster.len() != expected {
        return Err(PbmError::DataLength { expected, found: raster.len() });
    }
    let mut bitmap = Bitmap {
        width: width as u32,
        height: height as u32,
        stride,
        bytes: raster.to_vec(),
    };
    // Normalize padding bits so decoded bitmaps compare equal to built ones.
    let pad = (8 - (width % 8) as u8) % 8;
    if pad > 0 {
        let mask = 0xffu8 << pad;
        for row in 0..height as usize {
            bitmap.bytes[row * stride + stride - 1] &= mask;
        }
    }
    Ok(bitmap)
}

/// Fraction of all black pixels lying in the border band: pixels whose row
/// index is below `fraction · height` or whose column index is below
/// `fraction · width`. Defined for square bitmaps with at least one black
/// pixel and `fraction` in `(0, 1]`.
pub fn border_density(bitmap: &Bitmap, fraction: f64) -> Result<f64, RenderError> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(RenderError::InvalidFraction { given: fraction });
    }
    if bitmap.width != bitmap.height {
        return Err(RenderError::NotSquare { width: bitmap.width, height: bitmap.height });
    }
    let row_cut = fraction * bitmap.height as f64;
    let col_cut = fraction * bitmap.width as f64;
    let mut total = 0u64;
    let mut border = 0u64;
    for y in 0..bitmap.height {
        for x in 0..bitmap.width {
            if bitmap.get(x, y) {
                total += 1;
                if (y as f64) < row_cut || (x as f64) < col_cut {
                    border += 1;
                }
            }
        }
    }
    if total == 0 {
        return Err(RenderError::NoLinksRendered);
    }
    Ok(border as f64 / total as f64)
}
