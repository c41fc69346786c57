package com.shop.util;

public class ShopException extends RuntimeException {
    public ShopException(String message) {
        super(message);
    }
}
