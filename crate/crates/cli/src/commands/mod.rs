pub mod bench;
pub mod ft_demo;
pub mod interpolate;
pub mod selftest;
pub mod table;
