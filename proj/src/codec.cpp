#include "grainsight/codec.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

// jpeglib.h needs FILE and size_t declared first.
#include <jpeglib.h>

namespace grainsight {

namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
    if (!f) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
    return f;
}

RgbImage read_png(const std::filesystem::path& path) {
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw IoError("cannot decode PNG " + path.string() + ": " + png.message);
    }
    png.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buf.data(), 0, nullptr)) {
        png_image_free(&png);
        throw IoError("cannot decode PNG " + path.string() + ": " + png.message);
    }
    return RgbImage(static_cast<int>(png.width), static_cast<int>(png.height), std::move(buf));
}

struct JpegError {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void on_jpeg_error(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegError*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

RgbImage read_jpeg(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    jpeg_decompress_struct cinfo;
    JpegError err;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = on_jpeg_error;
    std::vector<std::uint8_t> buf;
    int width = 0;
    int height = 0;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError("cannot decode JPEG " + path.string() + ": " + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    width = static_cast<int>(cinfo.output_width);
    height = static_cast<int>(cinfo.output_height);
    buf.resize(static_cast<std::size_t>(width) * height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = buf.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return RgbImage(width, height, std::move(buf));
}

void write_png_buffer(const std::filesystem::path& path, int width, int height,
                      std::uint32_t format, const std::uint8_t* data) {
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(width);
    png.height = static_cast<png_uint_32>(height);
    png.format = format;
    if (!png_image_write_to_file(&png, path.c_str(), 0, data, 0, nullptr)) {
        throw IoError("cannot write PNG " + path.string() + ": " + png.message);
    }
}

}  // namespace

RgbImage read_image(const std::filesystem::path& path) {
    unsigned char magic[8] = {};
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open " + path.string());
        in.read(reinterpret_cast<char*>(magic), sizeof magic);
        if (in.gcount() < 3) throw IoError(path.string() + " is too short to be an image");
    }
    static constexpr unsigned char kPng[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (std::memcmp(magic, kPng, 8) == 0) return read_png(path);
    if (magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF) return read_jpeg(path);
    throw IoError(path.string() + " is neither PNG nor JPEG");
}

void write_png(const std::filesystem::path& path, const RgbImage& img) {
    write_png_buffer(path, img.width(), img.height(), PNG_FORMAT_RGB, img.data().data());
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
    write_png_buffer(path, img.width(), img.height(), PNG_FORMAT_GRAY, img.data().data());
}

void write_png(const std::filesystem::path& path, const BinaryImage& mask) {
    std::vector<std::uint8_t> buf(mask.data().begin(), mask.data().end());
    for (auto& v : buf) v = v ? 255 : 0;
    write_png_buffer(path, mask.width(), mask.height(), PNG_FORMAT_GRAY, buf.data());
}

void write_jpeg(const std::filesystem::path& path, const RgbImage& img, int quality) {
    FilePtr f = open_file(path, "wb");
    jpeg_compress_struct cinfo;
    JpegError err;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = on_jpeg_error;
    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        throw IoError("cannot write JPEG " + path.string() + ": " + err.message);
    }
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, f.get());
    cinfo.image_width = static_cast<JDIMENSION>(img.width());
    cinfo.image_height = static_cast<JDIMENSION>(img.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        auto* row = const_cast<JSAMPROW>(img.row(static_cast<int>(cinfo.next_scanline)).data());
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
}

}  // namespace grainsight
