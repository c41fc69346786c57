package com.shop.app;

import java.util.List;
import com.shop.ui.ShopController;
import com.shop.ui.AdminConsole;
import com.shop.util.Logger;

/** Entry point wiring the front ends. */
public class ShopApp {
    public static void main(String[] args) {
        Logger log = new Logger("app");
        ShopController shop = new ShopController();
        AdminConsole admin = new AdminConsole();
        List<String> modes = List.of("shop", "admin");
        log.info("starting " + modes);
        shop.run();
        admin.run();
    }
}
